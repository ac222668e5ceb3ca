#include "diraclab/qsflow/foliation.hpp"

#include <cmath>
#include <numbers>

#include "diraclab/errors.hpp"

namespace dlab::qsflow {

ExteriorFoliation::ExteriorFoliation(surface::EmbeddedSurface base, int nodes)
    : base_(std::move(base)), coll_(nodes) {
  if (base_.ambient() != surface::AmbientKind::euclidean)
    throw PreconditionError("exterior foliation needs a surface in R^3");
  if (!base_.is_convex())
    throw PreconditionError("exterior foliation needs a convex base (parallel surfaces focus otherwise)");
  const int n = coll_.size();
  f_.resize(n);
  eta_.resize(n);
  k1_.resize(n);
  k2_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = coll_.nodes()[j];
    const surface::SurfacePoint p = base_.at(t);
    f_[j] = p.f;
    eta_[j] = p.h / std::sin(t);
    k1_[j] = p.k1;
    k2_[j] = p.k2;
  }
  df_ = coll_.d1() * f_;
  deta_ = coll_.d1() * eta_;
  dk1_ = coll_.d1() * k1_;
  dk2_ = coll_.d1() * k2_;
  diameter_ = base_.profile().diameter();
}

ExteriorFoliation::Level ExteriorFoliation::level(double rho) const {
  const int n = size();
  Level L;
  L.rho = rho;
  const Eigen::VectorXd s1 = (1.0 + rho * k1_.array()).matrix();
  const Eigen::VectorXd s2 = (1.0 + rho * k2_.array()).matrix();
  L.f = f_.cwiseProduct(s1);
  L.eta = eta_.cwiseProduct(s2);
  L.k1 = k1_.cwiseQuotient(s1);
  L.k2 = k2_.cwiseQuotient(s2);
  L.H = L.k1 + L.k2;
  L.K = L.k1.cwiseProduct(L.k2);

  const Eigen::VectorXd dfr = df_.cwiseProduct(s1) + rho * f_.cwiseProduct(dk1_);
  const Eigen::VectorXd dlog_eta = deta_.cwiseQuotient(eta_) + rho * dk2_.cwiseQuotient(s2);
  Eigen::VectorXd drift(n);
  L.area_weight.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = coll_.nodes()[j];
    drift[j] = std::cos(t) / std::sin(t) + dlog_eta[j] - dfr[j] / L.f[j];
    L.area_weight[j] = 2.0 * std::numbers::pi * coll_.sine_weights()[j] * L.f[j] * L.eta[j];
  }
  L.laplacian = L.f.cwiseAbs2().cwiseInverse().asDiagonal() *
                (coll_.d2() + drift.asDiagonal() * coll_.d1());
  return L;
}

ExteriorFoliation::Point ExteriorFoliation::at(double rho, double t) const {
  const surface::SurfacePoint p = base_.at(t);
  Point q;
  q.f = p.f * (1.0 + rho * p.k1);
  q.h = p.h * (1.0 + rho * p.k2);
  q.k1 = p.k1 / (1.0 + rho * p.k1);
  q.k2 = p.k2 / (1.0 + rho * p.k2);
  q.H = q.k1 + q.k2;
  q.K = q.k1 * q.k2;
  return q;
}

}  // namespace dlab::qsflow
