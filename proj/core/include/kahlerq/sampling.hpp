#pragma once

#include "kahlerq/rng.hpp"
#include "kahlerq/state.hpp"
#include "kahlerq/types.hpp"

namespace kahlerq {

// Gaussian-filled test data.  All draws consume the Rng in a documented order
// (column-major for matrices, real part before imaginary part), so frozen
// expected values in tests stay valid.

Vec random_vec(Rng& rng, Index n);
Mat random_mat(Rng& rng, Index rows, Index cols);

KahlerState random_state(Rng& rng, Index n, bool normalize = true);

CMat random_cmat(Rng& rng, Index n);
CMat random_hermitian(Rng& rng, Index n);
CMat random_unitary(Rng& rng, Index n);  // Q from the QR of a complex Gaussian matrix

}  // namespace kahlerq
