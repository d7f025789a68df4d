// Block-dense semidefinite solvers: a primal-dual interior-point method and
// an independent first-order splitting reference used to cross-check it.
#include "pmnc/sdp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace pmnc {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// One coefficient-matrix entry restricted to a block, with indices unpacked.
struct Ent {
  int r, c;
  double v;
};

// The entries of one symmetric coefficient matrix grouped by block.
struct BlockPart {
  int block;
  std::vector<Ent> ent;
};
using Parts = std::vector<BlockPart>;

Parts group_entries(const std::vector<SymEntry>& es) {
  std::map<int, std::vector<Ent>> by;
  for (const auto& e : es) by[e.block].push_back({e.row, e.col, e.value});
  Parts out;
  out.reserve(by.size());
  for (auto& [b, v] : by) out.push_back({b, std::move(v)});
  return out;
}

// tr(A * S) where A is the sparse symmetric matrix given by `ent` and S is
// dense (not necessarily symmetric; the symmetric part participates).
double sym_dot(const std::vector<Ent>& ent, const MatrixXd& S) {
  double acc = 0.0;
  for (const auto& e : ent)
    acc += e.r == e.c ? e.v * S(e.r, e.c) : e.v * (S(e.r, e.c) + S(e.c, e.r));
  return acc;
}

// S += w * A for the sparse symmetric matrix A.
void add_scaled(MatrixXd& S, double w, const std::vector<Ent>& ent) {
  for (const auto& e : ent) {
    S(e.r, e.c) += w * e.v;
    if (e.r != e.c) S(e.c, e.r) += w * e.v;
  }
}

void check_entries(const std::vector<SymEntry>& es,
                   const std::vector<int>& dims, const std::string& where) {
  std::set<std::array<int, 3>> seen;
  for (const auto& e : es) {
    if (e.block < 0 || e.block >= static_cast<int>(dims.size()))
      throw ValidationError(where + ": block index out of range");
    const int d = dims[e.block];
    if (e.row < 0 || e.row >= d || e.col < 0 || e.col >= d)
      throw ValidationError(where + ": entry index out of range");
    if (!std::isfinite(e.value))
      throw ValidationError(where + ": entry value is not finite");
    const std::array<int, 3> key{e.block, std::min(e.row, e.col),
                                 std::max(e.row, e.col)};
    if (!seen.insert(key).second)
      throw ValidationError(where + ": duplicate entry for one (row, col)");
  }
}

// Shared unpacked form of an SDPProblem.
struct Unpacked {
  int n_blocks = 0;
  std::vector<int> dims;
  int m = 0;
  int nf = 0;
  std::vector<MatrixXd> C;
  VectorXd b;
  VectorXd f;
  std::vector<Parts> A;  // per constraint
  MatrixXd G;            // m x nf free-variable coefficients
  double bnorm = 0.0, cnorm = 0.0, fnorm = 0.0;
};

Unpacked unpack(const SDPProblem& p) {
  Unpacked w;
  w.n_blocks = static_cast<int>(p.block_dims.size());
  w.dims = p.block_dims;
  w.m = static_cast<int>(p.constraints.size());
  w.nf = p.n_free;
  w.C.reserve(w.n_blocks);
  for (int d : w.dims) w.C.push_back(MatrixXd::Zero(d, d));
  for (const auto& e : p.objective) {
    w.C[e.block](e.row, e.col) = e.value;
    w.C[e.block](e.col, e.row) = e.value;
  }
  w.b.resize(w.m);
  w.f = VectorXd::Zero(w.nf);
  for (int j = 0; j < static_cast<int>(p.free_objective.size()); ++j)
    w.f[j] = p.free_objective[j];
  w.G = MatrixXd::Zero(w.m, w.nf);
  w.A.reserve(w.m);
  for (int i = 0; i < w.m; ++i) {
    const auto& con = p.constraints[i];
    w.b[i] = con.rhs;
    w.A.push_back(group_entries(con.lhs));
    for (const auto& [j, v] : con.free_lhs) w.G(i, j) = v;
  }
  w.bnorm = w.m ? w.b.lpNorm<Eigen::Infinity>() : 0.0;
  for (const auto& c : w.C) w.cnorm = std::max(w.cnorm, c.norm());
  w.fnorm = w.nf ? w.f.lpNorm<Eigen::Infinity>() : 0.0;
  return w;
}

double primal_objective(const Unpacked& u, const std::vector<MatrixXd>& X,
                        const VectorXd& uf) {
  double p = u.nf ? u.f.dot(uf) : 0.0;
  for (int b = 0; b < u.n_blocks; ++b) p += (u.C[b].cwiseProduct(X[b])).sum();
  return p;
}

VectorXd primal_residual_vec(const Unpacked& u, const std::vector<MatrixXd>& X,
                             const VectorXd& uf) {
  VectorXd r = u.b;
  for (int i = 0; i < u.m; ++i) {
    double acc = 0.0;
    for (const auto& part : u.A[i]) acc += sym_dot(part.ent, X[part.block]);
    r[i] -= acc;
  }
  if (u.nf) r -= u.G * uf;
  return r;
}

// Largest a >= 0 with S + a*dS >= 0, via the spectrum of L^-1 dS L^-T.
double max_step(const MatrixXd& S, const MatrixXd& dS) {
  Eigen::LLT<MatrixXd> llt(S);
  if (llt.info() != Eigen::Success)
    throw NumericalBreakdown("iterate left the positive definite cone");
  const MatrixXd T = llt.matrixL().solve(dS);
  const MatrixXd W = llt.matrixL().solve(T.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es((W + W.transpose()) / 2.0,
                                             Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < -1e-14 ? -1.0 / lmin : kInf;
}

double block_step(const std::vector<MatrixXd>& S,
                  const std::vector<MatrixXd>& dS) {
  double a = kInf;
  for (std::size_t b = 0; b < S.size(); ++b)
    if (S[b].rows() > 0) a = std::min(a, max_step(S[b], dS[b]));
  return a;
}

}  // namespace

void validate_sdp(const SDPProblem& p) {
  for (std::size_t b = 0; b < p.block_dims.size(); ++b)
    if (p.block_dims[b] <= 0)
      throw ValidationError("sdp: block " + std::to_string(b) +
                            " has nonpositive dimension");
  if (p.n_free < 0) throw ValidationError("sdp: negative free-variable count");
  if (!p.free_objective.empty() &&
      static_cast<int>(p.free_objective.size()) != p.n_free)
    throw ValidationError(
        "sdp: free_objective must be empty or have n_free entries");
  for (double v : p.free_objective)
    if (!std::isfinite(v))
      throw ValidationError("sdp: free objective value is not finite");
  check_entries(p.objective, p.block_dims, "sdp objective");
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& con = p.constraints[i];
    const std::string where = "sdp constraint " + std::to_string(i);
    check_entries(con.lhs, p.block_dims, where);
    if (con.lhs.empty())
      throw ValidationError(where +
                            ": empty matrix part (eliminate pure scalar "
                            "constraints before solving)");
    std::set<int> fs;
    for (const auto& [j, v] : con.free_lhs) {
      if (j < 0 || j >= p.n_free)
        throw ValidationError(where + ": free-variable index out of range");
      if (!std::isfinite(v))
        throw ValidationError(where + ": free coefficient is not finite");
      if (!fs.insert(j).second)
        throw ValidationError(where + ": duplicate free-variable index");
    }
    if (!std::isfinite(con.rhs))
      throw ValidationError(where + ": right-hand side is not finite");
  }
}

SDPSolution solve(const SDPProblem& p, double tol, int max_iterations) {
  validate_sdp(p);
  const Unpacked u = unpack(p);
  const int nb = u.n_blocks;
  double ntot = 0.0;
  for (int d : u.dims) ntot += d;
  ntot = std::max(ntot, 1.0);

  // Infeasible start on the central ray, scaled to the data.
  const double xi = std::max(10.0, 2.0 * u.bnorm);
  const double eta = std::max(10.0, 2.0 * u.cnorm);
  std::vector<MatrixXd> X, Z;
  for (int d : u.dims) {
    X.push_back(xi * MatrixXd::Identity(d, d));
    Z.push_back(eta * MatrixXd::Identity(d, d));
  }
  VectorXd y = VectorXd::Zero(u.m);
  VectorXd uf = VectorXd::Zero(u.nf);

  SDPSolution sol;
  const double huge = 1e10 * (1.0 + u.bnorm + u.cnorm + u.fnorm);
  int stalls = 0;

  auto package = [&](SDPStatus st) {
    sol.status = st;
    sol.primal_objective = primal_objective(u, X, uf);
    sol.dual_objective = u.m ? u.b.dot(y) : 0.0;
    sol.X = X;
    sol.Z = Z;
    sol.y.assign(y.data(), y.data() + y.size());
    sol.free_values.assign(uf.data(), uf.data() + uf.size());
    const VectorXd rp = primal_residual_vec(u, X, uf);
    sol.primal_residual = u.m ? rp.lpNorm<Eigen::Infinity>() : 0.0;
    double dres = 0.0;
    for (int b = 0; b < nb; ++b) {
      MatrixXd Rd = -Z[b] - u.C[b];
      for (int i = 0; i < u.m; ++i)
        for (const auto& part : u.A[i])
          if (part.block == b) add_scaled(Rd, y[i], part.ent);
      dres = std::max(dres, Rd.norm());
    }
    if (u.nf) {
      const VectorXd rf = u.f - u.G.transpose() * y;
      dres = std::max(dres, rf.lpNorm<Eigen::Infinity>());
    }
    sol.dual_residual = dres;
    sol.duality_gap = std::abs(sol.primal_objective - sol.dual_objective) /
                      (1.0 + std::abs(sol.primal_objective) +
                       std::abs(sol.dual_objective));
    return sol;
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    sol.iterations = iter;
    // Residuals of the current iterate.
    const VectorXd rp = primal_residual_vec(u, X, uf);
    std::vector<MatrixXd> Rd(nb);  // A*(y) - Z - C
    for (int b = 0; b < nb; ++b) Rd[b] = -Z[b] - u.C[b];
    for (int i = 0; i < u.m; ++i)
      for (const auto& part : u.A[i])
        add_scaled(Rd[part.block], y[i], part.ent);
    const VectorXd rf = u.nf ? VectorXd(u.f - u.G.transpose() * y)
                             : VectorXd(0);

    double xz = 0.0;
    for (int b = 0; b < nb; ++b) xz += (X[b].cwiseProduct(Z[b])).sum();
    const double mu = xz / ntot;
    const double pobj = primal_objective(u, X, uf);
    const double dobj = u.m ? u.b.dot(y) : 0.0;

    double dres = 0.0;
    for (const auto& r : Rd) dres = std::max(dres, r.norm());
    const double pres = u.m ? rp.lpNorm<Eigen::Infinity>() : 0.0;
    const double fres = u.nf ? rf.lpNorm<Eigen::Infinity>() : 0.0;
    sol.trace.push_back({pobj, dobj, xz, pres, std::max(dres, fres)});

    const double sc = 1.0 + std::abs(pobj) + std::abs(dobj);
    const double relgap = std::abs(pobj - dobj) / sc;
    const bool feas = pres <= tol * (1.0 + u.bnorm) &&
                      dres <= tol * (1.0 + u.cnorm) &&
                      fres <= tol * (1.0 + u.fnorm);
    if (feas && relgap <= tol && xz / sc <= 100 * tol)
      return package(SDPStatus::optimal);
    // Divergence heuristics; see the header for their advisory nature.
    if (dobj < -huge) return package(SDPStatus::infeasible);
    if (pobj > huge) return package(SDPStatus::unbounded);
    if (!std::isfinite(mu) || mu > 1e16)
      throw NumericalBreakdown("interior-point iterates diverged");

    // Factor Z and build its inverse blockwise.
    std::vector<Eigen::LLT<MatrixXd>> zllt;
    std::vector<MatrixXd> Zinv(nb);
    for (int b = 0; b < nb; ++b) {
      zllt.emplace_back(Z[b]);
      if (zllt.back().info() != Eigen::Success)
        throw NumericalBreakdown("dual slack lost positive definiteness");
      Zinv[b] = zllt.back().solve(MatrixXd::Identity(u.dims[b], u.dims[b]));
    }

    // Schur complement M(i,j) = <A_i, X A_j Z^-1>.
    MatrixXd M = MatrixXd::Zero(u.m, u.m);
    for (int j = 0; j < u.m; ++j) {
      // W_b = X_b A_{j,b} Zinv_b on the blocks constraint j touches.
      std::vector<std::pair<int, MatrixXd>> W;
      for (const auto& part : u.A[j]) {
        const int b = part.block;
        MatrixXd Wb = MatrixXd::Zero(u.dims[b], u.dims[b]);
        for (const auto& e : part.ent) {
          Wb.noalias() += e.v * X[b].col(e.r) * Zinv[b].row(e.c);
          if (e.r != e.c)
            Wb.noalias() += e.v * X[b].col(e.c) * Zinv[b].row(e.r);
        }
        W.emplace_back(b, std::move(Wb));
      }
      for (int i = j; i < u.m; ++i) {
        double acc = 0.0;
        for (const auto& part : u.A[i])
          for (const auto& [wb, wm] : W)
            if (wb == part.block) acc += sym_dot(part.ent, wm);
        M(i, j) = acc;
        M(j, i) = acc;
      }
    }

    // Factor M with a tiny escalating ridge; redundant equality constraints
    // otherwise make it exactly singular.
    Eigen::LDLT<MatrixXd> mldlt;
    if (u.m) {
      const double mscale = std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
      double ridge = 1e-14 * mscale;
      for (int attempt = 0;; ++attempt) {
        MatrixXd Mr = M;
        Mr.diagonal().array() += ridge;
        mldlt.compute(Mr);
        if (mldlt.info() == Eigen::Success && mldlt.isPositive()) break;
        if (attempt >= 6)
          throw NumericalBreakdown(
              "Schur complement is not positive definite");
        ridge *= 100.0;
      }
    }
    MatrixXd Ki;  // M^-1 G
    Eigen::LDLT<MatrixXd> sldlt;
    if (u.nf) {
      Ki = mldlt.solve(u.G);
      sldlt.compute(MatrixXd(u.G.transpose() * Ki));
      if (sldlt.info() != Eigen::Success)
        throw NumericalBreakdown(
            "free-variable reduced system is not factorizable");
    }

    // One Newton direction for a given complementarity right-hand side.
    auto direction = [&](const std::vector<MatrixXd>& Rc) {
      VectorXd h = -rp;
      for (int b = 0; b < nb; ++b) {
        const MatrixXd T = (Rc[b] - X[b] * Rd[b]) * Zinv[b];
        for (int i = 0; i < u.m; ++i)
          for (const auto& part : u.A[i])
            if (part.block == b) h[i] += sym_dot(part.ent, T);
      }
      VectorXd dy, du;
      if (u.m == 0) {
        dy = VectorXd(0);
        du = VectorXd::Zero(u.nf);
      } else if (u.nf) {
        const VectorXd mh = mldlt.solve(h);
        du = sldlt.solve(rf - u.G.transpose() * mh);
        dy = mh + Ki * du;
      } else {
        dy = mldlt.solve(h);
        du = VectorXd(0);
      }
      if (!dy.allFinite() || (u.nf && !du.allFinite()))
        throw NumericalBreakdown("Newton direction is not finite");
      std::vector<MatrixXd> dZ(nb), dX(nb);
      for (int b = 0; b < nb; ++b) dZ[b] = Rd[b];
      for (int i = 0; i < u.m; ++i)
        for (const auto& part : u.A[i])
          add_scaled(dZ[part.block], dy[i], part.ent);
      for (int b = 0; b < nb; ++b) {
        MatrixXd d = (Rc[b] - X[b] * dZ[b]) * Zinv[b];
        dX[b] = (d + d.transpose()) / 2.0;
      }
      return std::tuple{std::move(dX), std::move(dZ), std::move(dy),
                        std::move(du)};
    };

    // Predictor.
    std::vector<MatrixXd> Rc(nb);
    for (int b = 0; b < nb; ++b) Rc[b] = -X[b] * Z[b];
    auto [dXa, dZa, dya, dua] = direction(Rc);
    const double apa = std::min(1.0, block_step(X, dXa));
    const double ada = std::min(1.0, block_step(Z, dZa));
    double xza = 0.0;
    for (int b = 0; b < nb; ++b)
      xza += ((X[b] + apa * dXa[b]).cwiseProduct(Z[b] + ada * dZa[b])).sum();
    const double sigma =
        std::clamp(std::pow(std::max(xza, 0.0) / std::max(xz, 1e-300), 3.0),
                   1e-8, 1.0);

    // Corrector.
    for (int b = 0; b < nb; ++b) {
      Rc[b] = -X[b] * Z[b] - dXa[b] * dZa[b];
      Rc[b].diagonal().array() += sigma * mu;
    }
    auto [dX, dZ, dy, du] = direction(Rc);

    const double tau = iter < 2 ? 0.9 : 0.98;
    double ap = std::min(1.0, tau * block_step(X, dX));
    double ad = std::min(1.0, tau * block_step(Z, dZ));
    // Guard against rounding at the cone boundary.
    for (int tries = 0; tries < 8; ++tries) {
      bool ok = true;
      for (int b = 0; b < nb && ok; ++b)
        ok = Eigen::LLT<MatrixXd>(MatrixXd(X[b] + ap * dX[b])).info() ==
             Eigen::Success;
      if (ok) break;
      ap *= 0.7;
    }
    for (int tries = 0; tries < 8; ++tries) {
      bool ok = true;
      for (int b = 0; b < nb && ok; ++b)
        ok = Eigen::LLT<MatrixXd>(MatrixXd(Z[b] + ad * dZ[b])).info() ==
             Eigen::Success;
      if (ok) break;
      ad *= 0.7;
    }

    for (int b = 0; b < nb; ++b) {
      X[b] += ap * dX[b];
      X[b] = ((X[b] + X[b].transpose()) / 2.0).eval();
      Z[b] += ad * dZ[b];
      Z[b] = ((Z[b] + Z[b].transpose()) / 2.0).eval();
    }
    y += ad * dy;
    if (u.nf) uf += ap * du;

    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalls >= 3) {
        if (std::max({relgap, pres / (1.0 + u.bnorm),
                      dres / (1.0 + u.cnorm)}) <= 1e3 * tol)
          return package(SDPStatus::max_iterations);
        throw NumericalBreakdown("interior-point step sizes collapsed");
      }
    } else {
      stalls = 0;
    }
  }
  sol.iterations = max_iterations;
  return package(SDPStatus::max_iterations);
}

SDPSolution solve_reference(const SDPProblem& p, double tol,
                            long max_iterations) {
  validate_sdp(p);
  const Unpacked u = unpack(p);
  const double rt2 = std::sqrt(2.0);

  // Vectorize: per-block upper triangles (off-diagonals scaled by sqrt(2)
  // so the trace inner product becomes Euclidean), free variables appended.
  std::vector<int> off(u.n_blocks + 1, 0);
  for (int b = 0; b < u.n_blocks; ++b)
    off[b + 1] = off[b] + u.dims[b] * (u.dims[b] + 1) / 2;
  const int nmat = off[u.n_blocks];
  const int N = nmat + u.nf;
  auto vindex = [&](int b, int r, int c) {
    // Column-major upper triangle: (r, c) with r <= c sits at c(c+1)/2 + r.
    if (r > c) std::swap(r, c);
    return off[b] + c * (c + 1) / 2 + r;
  };

  VectorXd cv = VectorXd::Zero(N);
  for (const auto& e : p.objective)
    cv[vindex(e.block, e.row, e.col)] = e.row == e.col ? e.value
                                                       : rt2 * e.value;
  for (int j = 0; j < static_cast<int>(p.free_objective.size()); ++j)
    cv[nmat + j] = p.free_objective[j];

  MatrixXd Am = MatrixXd::Zero(u.m, N);
  for (int i = 0; i < u.m; ++i) {
    for (const auto& e : p.constraints[i].lhs)
      Am(i, vindex(e.block, e.row, e.col)) =
          e.row == e.col ? e.value : rt2 * e.value;
    for (const auto& [j, v] : p.constraints[i].free_lhs) Am(i, nmat + j) = v;
  }

  Eigen::LDLT<MatrixXd> gram;
  if (u.m) {
    MatrixXd g = Am * Am.transpose();
    g.diagonal().array() += 1e-12 * (g.trace() / u.m + 1.0);
    gram.compute(g);
  }

  VectorXd z = VectorXd::Zero(N), s = VectorXd::Zero(N), lam;
  double rho = 1.0;
  SDPSolution sol;
  long it = 0;
  bool converged = false;
  for (; it < max_iterations; ++it) {
    VectorXd v = z - s + cv / rho;
    VectorXd w = v;
    if (u.m) {
      lam = gram.solve(Am * v - u.b);
      w -= Am.transpose() * lam;
    }
    // Conic projection blockwise; free coordinates pass through.
    VectorXd zn = w + s;
    for (int b = 0; b < u.n_blocks; ++b) {
      const int d = u.dims[b];
      MatrixXd Sb(d, d);
      for (int c = 0; c < d; ++c)
        for (int r = 0; r <= c; ++r) {
          const double val = zn[vindex(b, r, c)] / (r == c ? 1.0 : rt2);
          Sb(r, c) = val;
          Sb(c, r) = val;
        }
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(Sb);
      const MatrixXd Pb = es.eigenvectors() *
                          es.eigenvalues().cwiseMax(0.0).asDiagonal() *
                          es.eigenvectors().transpose();
      for (int c = 0; c < d; ++c)
        for (int r = 0; r <= c; ++r)
          zn[vindex(b, r, c)] = Pb(r, c) * (r == c ? 1.0 : rt2);
    }
    const double rpri = (w - zn).lpNorm<Eigen::Infinity>();
    const double rdua = rho * (zn - z).lpNorm<Eigen::Infinity>();
    s += w - zn;
    z = zn;
    if (it % 500 == 0) {
      const double pobj = cv.dot(z);
      const double dobj = u.m ? rho * u.b.dot(lam) : 0.0;
      sol.trace.push_back({pobj, dobj, -rho * z.dot(s), rpri, rdua});
    }
    const double scale = tol * (1.0 + z.lpNorm<Eigen::Infinity>());
    if (rpri <= scale && rdua <= scale) {
      converged = true;
      break;
    }
    if (it % 50 == 49) {
      if (rpri > 10.0 * rdua && rho < 1e6) {
        rho *= 2.0;
        s /= 2.0;
      } else if (rdua > 10.0 * rpri && rho > 1e-4) {
        rho /= 2.0;
        s *= 2.0;
      }
    }
  }

  // Report the conic-feasible point; affine error shows in the residual.
  sol.status = converged ? SDPStatus::optimal : SDPStatus::max_iterations;
  sol.iterations = static_cast<int>(std::min<long>(
      it + 1, std::numeric_limits<int>::max()));
  for (int b = 0; b < u.n_blocks; ++b) {
    const int d = u.dims[b];
    MatrixXd Xb(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r <= c; ++r) {
        const double val = z[vindex(b, r, c)] / (r == c ? 1.0 : rt2);
        Xb(r, c) = val;
        Xb(c, r) = val;
      }
    sol.X.push_back(Xb);
  }
  sol.free_values.assign(z.data() + nmat, z.data() + N);
  sol.primal_objective = cv.dot(z);
  if (u.m) {
    const VectorXd yv = rho * lam;
    sol.y.assign(yv.data(), yv.data() + yv.size());
    sol.dual_objective = u.b.dot(yv);
    sol.primal_residual = (Am * z - u.b).lpNorm<Eigen::Infinity>();
  } else {
    sol.dual_objective = sol.primal_objective;
  }
  sol.duality_gap = std::abs(sol.primal_objective - sol.dual_objective) /
                    (1.0 + std::abs(sol.primal_objective) +
                     std::abs(sol.dual_objective));
  return sol;
}

std::string serialize_sdp(const SDPProblem& p) {
  std::ostringstream os;
  os.precision(17);
  os << "blocks";
  for (int d : p.block_dims) os << ' ' << d;
  os << "\nnfree " << p.n_free << '\n';
  for (const auto& e : p.objective)
    os << "obj " << e.block << ' ' << e.row << ' ' << e.col << ' ' << e.value
       << '\n';
  for (std::size_t j = 0; j < p.free_objective.size(); ++j)
    os << "objf " << j << ' ' << p.free_objective[j] << '\n';
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& con = p.constraints[i];
    os << "con " << i << " rhs " << con.rhs << '\n';
    for (const auto& e : con.lhs)
      os << "con " << i << " mat " << e.block << ' ' << e.row << ' ' << e.col
         << ' ' << e.value << '\n';
    for (const auto& [j, v] : con.free_lhs)
      os << "con " << i << " free " << j << ' ' << v << '\n';
  }
  return os.str();
}

}  // namespace pmnc
