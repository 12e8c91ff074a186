#include "morpho/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "morpho/error.hpp"

namespace morpho::lp {
namespace {

constexpr double kEps = 1e-10;
constexpr long kMaxIterations = 200000;

class Tableau {
 public:
  // Columns: x+ (n), x- (n), slacks (m), auxiliary x0, rhs.
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : m_(a.rows()), n_(a.cols()), aux_(2 * n_ + m_), rhs_(aux_ + 1), t_(m_ + 1, rhs_ + 1), basis_(m_) {
    t_.setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      t_.block(i, 0, 1, n_) = a.row(i);
      t_.block(i, n_, 1, n_) = -a.row(i);
      t_(i, 2 * n_ + i) = 1;
      t_(i, aux_) = -1;
      t_(i, rhs_) = b(i);
      basis_[i] = 2 * n_ + i;
    }
  }

  bool phase_one() {
    Eigen::Index worst = -1;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (t_(i, rhs_) < -kEps && (worst < 0 || t_(i, rhs_) < t_(worst, rhs_))) worst = i;
    if (worst < 0) return true;

    // maximize -x0
    t_.row(m_).setZero();
    t_(m_, aux_) = 1;
    pivot(worst, aux_);
    iterate(true);
    if (t_(m_, rhs_) < -1e-8) return false;

    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] != aux_) continue;
      for (Eigen::Index j = 0; j < aux_; ++j) {
        if (std::abs(t_(i, j)) > kEps) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  Status phase_two(const Eigen::VectorXd& c) {
    t_.row(m_).setZero();
    t_.block(m_, 0, 1, n_) = -c.transpose();
    t_.block(m_, n_, 1, n_) = c.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double coef = t_(m_, basis_[i]);
      if (coef != 0) t_.row(m_) -= coef * t_.row(i);
    }
    return iterate(false);
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x(basis_[i]) += t_(i, rhs_);
      else if (basis_[i] < 2 * n_) x(basis_[i] - n_) -= t_(i, rhs_);
    }
    return x;
  }

 private:
  Status iterate(bool allow_aux) {
    const Eigen::Index last = allow_aux ? aux_ + 1 : aux_;
    for (long it = 0; it < kMaxIterations; ++it) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < last; ++j) {
        if (t_(m_, j) < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;

      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (t_(i, enter) <= kEps) continue;
        const double ratio = t_(i, rhs_) / t_(i, enter);
        if (ratio < best - 1e-12 || (std::abs(ratio - best) <= 1e-12 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
    throw Error(ErrorKind::InvalidArgument, "simplex iteration limit reached");
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  Eigen::Index m_, n_, aux_, rhs_;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

Result maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  if (a.rows() != b.size() || a.cols() != c.size())
    throw Error(ErrorKind::DimensionMismatch, "linear program shapes disagree");
  Result r;
  Tableau t(a, b);
  if (!t.phase_one()) {
    r.status = Status::Infeasible;
    return r;
  }
  r.status = t.phase_two(c);
  r.x = t.solution();
  r.objective = r.status == Status::Optimal ? c.dot(r.x) : std::numeric_limits<double>::infinity();
  return r;
}

Result feasible_point(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return maximize(a, b, Eigen::VectorXd::Zero(a.cols()));
}

}  // namespace morpho::lp
