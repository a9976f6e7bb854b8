#include "kahlerq/state.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "kahlerq/errors.hpp"

namespace kahlerq {

namespace {

void require_same_dim(const KahlerState& a, const KahlerState& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(op) + ": states have dims " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
}

}  // namespace

KahlerState::KahlerState(Vec q_in, Vec p_in) : q(std::move(q_in)), p(std::move(p_in)) {
  if (q.size() != p.size()) {
    throw DimensionMismatch("KahlerState: q has size " + std::to_string(q.size()) +
                            " but p has size " + std::to_string(p.size()));
  }
}

KahlerState KahlerState::zero(Index n) { return {Vec::Zero(n), Vec::Zero(n)}; }

Vec KahlerState::stacked() const {
  Vec v(2 * dim());
  v.head(dim()) = q;
  v.tail(dim()) = p;
  return v;
}

KahlerState KahlerState::from_stacked(const Vec& v) {
  if (v.size() % 2 != 0) {
    throw DimensionMismatch("from_stacked: length " + std::to_string(v.size()) + " is odd");
  }
  const Index n = v.size() / 2;
  return {v.head(n), v.tail(n)};
}

KahlerState operator+(const KahlerState& a, const KahlerState& b) {
  require_same_dim(a, b, "operator+");
  return {a.q + b.q, a.p + b.p};
}

KahlerState operator-(const KahlerState& a, const KahlerState& b) {
  require_same_dim(a, b, "operator-");
  return {a.q - b.q, a.p - b.p};
}

KahlerState operator*(double s, const KahlerState& u) { return {s * u.q, s * u.p}; }

CVec complexify(const KahlerState& u) {
  CVec v(u.dim());
  v.real() = u.q;
  v.imag() = u.p;
  return v;
}

KahlerState decomplexify(const CVec& v) { return {v.real(), v.imag()}; }

double metric_g(const KahlerState& u, const KahlerState& v) {
  require_same_dim(u, v, "metric_g");
  return u.q.dot(v.q) + u.p.dot(v.p);
}

double symplectic_omega(const KahlerState& u, const KahlerState& v) {
  require_same_dim(u, v, "symplectic_omega");
  return u.q.dot(v.p) - u.p.dot(v.q);
}

KahlerState apply_J(const KahlerState& u) { return {-u.p, u.q}; }

KahlerState apply_Omega(const KahlerState& u) { return {u.p, -u.q}; }

double g_norm(const KahlerState& u) { return std::sqrt(metric_g(u, u)); }

KahlerState normalized(const KahlerState& u) {
  const double n = g_norm(u);
  if (n == 0.0) throw KahlerError("normalized: zero state");
  return (1.0 / n) * u;
}

}  // namespace kahlerq
