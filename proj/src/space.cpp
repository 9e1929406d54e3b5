#include "plap/space.hpp"

namespace plap {

FemSpace::FemSpace(const Mesh& mesh, double p, const AlConfig& al)
    : mesh_(&mesh), p_(p), K_(mesh), al_(K_, p, al) {
  require_p(p);
}

std::size_t FemSpace::size() const { return static_cast<std::size_t>(mesh_->n_free()); }

double FemSpace::I(const Coeffs& u) const {
  return eval_I(FeFunction(*mesh_, u), p_);
}

double FemSpace::J(const Coeffs& u) const {
  return eval_J(FeFunction(*mesh_, u), p_);
}

Coeffs FemSpace::source_density_vec(const Coeffs& u) const {
  return source_density(FeFunction(*mesh_, u), p_).action;
}

Coeffs FemSpace::invert(const Coeffs& f_action, std::vector<double>* history) {
  DualVector f(*mesh_);
  f.action = f_action;
  return al_.solve(f, history).coeffs;
}

void FemSpace::reset_solver() { al_.reset(); }

void FemSpace::set_al_tol(double tol) { al_.set_tol(tol); }

}  // namespace plap
