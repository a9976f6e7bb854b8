#pragma once

#include "kahlerq/operators.hpp"
#include "kahlerq/state.hpp"
#include "kahlerq/types.hpp"

namespace kahlerq {

// The two inequivalent ways to tensor real phase spaces.  Only the
// complex-field product is built as actual physics; the real-field product is
// dimension bookkeeping kept around to exhibit the 4mn vs 2mn discrepancy.
enum class TensorField { RealField, ComplexField };

struct CompositeLabel {
  TensorField mode = TensorField::ComplexField;
  Index m = 0;
  Index n = 0;
  Index result_dim = 0;  // real dimension: 4mn for RealField, 2mn for ComplexField
};

CompositeLabel tensor_dim_real(Index m, Index n);     // result_dim = 4mn
CompositeLabel tensor_dim_complex(Index m, Index n);  // result_dim = 2mn

// Kronecker product taken on the complex side: decomplexify(gamma(a) (x) gamma(b)).
// Index convention is row-major (first factor outer).  Real-component form:
//   q_ab = q_a (x) q_b - p_a (x) p_b,   p_ab = q_a (x) p_b + p_a (x) q_b.
KahlerState tensor_state_complex(const KahlerState& a, const KahlerState& b);

// Lift of the Kronecker product of the lowered factors.  Throws
// StructureViolation if either input is not a lift image.
KahlerOperator tensor_operator_complex(const KahlerOperator& a, const KahlerOperator& b,
                                       double tol = 1e-10);

enum class PairKind { BellPhiPlus };

// (|00> + |11>)/sqrt(2) as a 4-mode Kahler state; not a complex-tensor product
// of any two single-system states.
KahlerState entangled_pair(PairKind kind = PairKind::BellPhiPlus);

}  // namespace kahlerq
