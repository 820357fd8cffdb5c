// Copyright 2026 The rdseries Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rdseries/gaussian_exact.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "rdseries/errors.hpp"
#include "rdseries/parallel.hpp"

namespace rds::gaussian_exact {
namespace {

void require_strictly_ordered(const std::vector<double>& pts, bool descending) {
  if (pts.empty()) throw DomainError("grid must be nonempty");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const bool ok = descending ? pts[i] < pts[i - 1] : pts[i] > pts[i - 1];
    if (!ok) throw InvalidArgument("grid points must be strictly ordered (no duplicates)");
  }
}

}  // namespace

CovGrid CovGrid::lil(const std::vector<Exponent>& s_points) {
  CovGrid g;
  g.kind = GridKind::kLil;
  for (const auto& e : s_points) g.points.push_back(e.log());
  if (g.points.size() > 1 && g.points[1] > g.points[0]) {
    require_strictly_ordered(g.points, false);
  } else {
    require_strictly_ordered(g.points, true);
  }
  return g;
}

CovGrid CovGrid::lil_values(const std::vector<double>& s_points) {
  std::vector<Exponent> e;
  for (double s : s_points) e.push_back(Exponent::of(s));
  return lil(e);
}

CovGrid CovGrid::flt(double s_big, const std::vector<double>& t_points) {
  if (!(s_big > 0.0)) throw DomainError("s_big must be positive");
  require_strictly_ordered(t_points, false);
  for (double t : t_points) {
    if (!(t > 0.0)) throw DomainError("FLT grid times must be positive");
  }
  CovGrid g;
  g.kind = GridKind::kFlt;
  g.points = t_points;
  g.s_big = s_big;
  return g;
}

CovGrid CovGrid::alpha_flt(double alpha, double s, const std::vector<double>& t_points) {
  if (!(alpha > -0.5)) throw DomainError("alpha grid requires alpha > -1/2");
  if (!(s > 0.0)) throw DomainError("alpha grid requires s > 0");
  require_strictly_ordered(t_points, false);
  for (double t : t_points) {
    if (!(t > 0.0)) throw DomainError("FLT grid times must be positive");
  }
  CovGrid g;
  g.kind = GridKind::kAlphaFlt;
  g.points = t_points;
  g.alpha = alpha;
  g.s = s;
  return g;
}

Exponent CovGrid::exponent(std::size_t i) const {
  switch (kind) {
    case GridKind::kLil: return Exponent::from_log(points[i]);
    case GridKind::kFlt: return Exponent::from_log(-points[i] * s_big);
    case GridKind::kAlphaFlt: return Exponent::of(s * points[i]);
  }
  throw InvalidArgument("unknown grid kind");
}

double CovGrid::scale() const {
  switch (kind) {
    case GridKind::kLil: return 1.0;
    case GridKind::kFlt: return 1.0 / s_big;
    case GridKind::kAlphaFlt: return std::pow(s, 1.0 + 2.0 * alpha);
  }
  return 1.0;
}

FactorizedCov factorize(const Eigen::MatrixXd& matrix) {
  const Eigen::Index p = matrix.rows();
  if (p == 0 || matrix.cols() != p) throw InvalidArgument("matrix must be square and nonempty");
  Eigen::VectorXd d = matrix.diagonal();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(d(i) >= 0.0)) throw DomainError("covariance diagonal must be nonnegative");
  }
  Eigen::VectorXd root(p), inv_root(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    root(i) = std::sqrt(d(i));
    inv_root(i) = d(i) > 0.0 ? 1.0 / root(i) : 0.0;
  }
  Eigen::MatrixXd corr = inv_root.asDiagonal() * matrix * inv_root.asDiagonal();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (d(i) == 0.0) corr(i, i) = 1.0;
  }

  FactorizedCov fc;
  fc.matrix = matrix;
  fc.widths = Eigen::MatrixXd::Zero(p, p);
  for (double jitter : kJitterLadder) {
    Eigen::MatrixXd trial = corr;
    trial.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(trial);
    if (llt.info() != Eigen::Success) continue;
    Eigen::MatrixXd l = llt.matrixL();
    if (!l.allFinite()) continue;
    fc.factor = root.asDiagonal() * l;
    fc.jitter_used = jitter;
    return fc;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr, Eigen::EigenvaluesOnly);
  const double min_ev = eig.eigenvalues().minCoeff();
  std::ostringstream msg;
  msg << "covariance factorization failed after jitter 1e-8; smallest "
         "correlation eigenvalue " << min_ev;
  throw ConditioningError(msg.str(), min_ev);
}

FactorizedCov build_cov(const CovGrid& grid, double sigma, std::uint64_t direct_terms) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const std::size_t p = grid.points.size();
  const double alpha = grid.kind == GridKind::kAlphaFlt ? grid.alpha : -0.5;
  const double factor = sigma * sigma * grid.scale();
  Eigen::MatrixXd mid(p, p), width(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      const Enclosure e = analytics::cov_kernel_enclosure(
          alpha, grid.exponent(i), grid.exponent(j), direct_terms);
      mid(i, j) = mid(j, i) = e.mid() * factor;
      width(i, j) = width(j, i) = e.width() * factor;
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (!(width(i, j) < 1e-6 * std::sqrt(mid(i, i) * mid(j, j)))) {
        std::ostringstream msg;
        msg << "covariance enclosure (" << i << "," << j << ") too wide: "
            << width(i, j);
        throw PrecisionError(msg.str());
      }
    }
  }
  FactorizedCov fc = factorize(mid);
  fc.grid = grid;
  fc.widths = width;
  return fc;
}

double round_trip_error(const FactorizedCov& fc) {
  const Eigen::MatrixXd r = fc.factor * fc.factor.transpose();
  return (r - fc.matrix).norm() / fc.matrix.norm();
}

std::vector<double> sample_one(const FactorizedCov& fc, const SeedContext& ctx) {
  const Eigen::Index p = fc.factor.rows();
  Eigen::VectorXd z(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    z(i) = innovations::standard_normal(ctx, static_cast<std::uint64_t>(i) + 2);
  }
  const Eigen::VectorXd x = fc.factor.triangularView<Eigen::Lower>() * z;
  return std::vector<double>(x.data(), x.data() + p);
}

PathEnsemble sample_ensemble(const FactorizedCov& fc, std::size_t n_rep,
                             const SeedContext& ctx, unsigned workers) {
  if (n_rep < 1) throw DomainError("n_rep must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  PathEnsemble ens;
  ens.t_grid = fc.grid.points;
  if (ens.t_grid.size() != fc.dim()) {
    ens.t_grid.resize(fc.dim());
    for (std::size_t i = 0; i < fc.dim(); ++i) ens.t_grid[i] = static_cast<double>(i);
  }
  ens.n_rep = n_rep;
  ens.values.resize(n_rep * fc.dim());
  ens.normalization = "exact gaussian law";
  ens.meta.master_seed = ctx.master_seed;
  ens.meta.stream_id = ctx.stream_id;
  ens.meta.jitter = fc.jitter_used;
  parallel_for(n_rep, workers, [&](std::size_t r) {
    const std::vector<double> row = sample_one(fc, ctx.replicate(r));
    std::copy(row.begin(), row.end(), ens.values.begin() + r * fc.dim());
  });
  ens.meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ens;
}

}  // namespace rds::gaussian_exact
