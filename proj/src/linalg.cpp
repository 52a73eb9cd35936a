#include "dioph/linalg.hpp"

#include <functional>
#include <vector>

namespace dioph {

MatQ to_rational(const MatI& m) {
  MatQ r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

VecQ to_rational(const VecI& v) {
  VecQ r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = Rat(v(i));
  return r;
}

VecI to_integral(const VecQ& v) {
  VecI r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = to_int_checked(v(i));
  return r;
}

Int det_bareiss(MatI m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) fail(ErrorKind::Internal, "NonSquare", "determinant of non-square matrix");
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index p = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = div_exact(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

namespace {

// Shared HNF worker over "rows"; optionally tracks the unimodular transform.
void hnf_in_place(MatI& a, MatI* u) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (u) *u = MatI::Identity(m, m);
  Eigen::Index r = 0;  // current pivot row
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    // Euclid on column c among rows >= r.
    while (true) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = r; i < m; ++i) {
        if (a(i, c) == 0) continue;
        if (piv < 0 || abs_int(a(i, c)) < abs_int(a(piv, c))) piv = i;
      }
      if (piv < 0) break;
      if (piv != r) {
        a.row(piv).swap(a.row(r));
        if (u) u->row(piv).swap(u->row(r));
      }
      bool done = true;
      for (Eigen::Index i = r + 1; i < m; ++i) {
        if (a(i, c) == 0) continue;
        Int q = floor_div(a(i, c), a(r, c));
        if (q != 0) {
          a.row(i) -= (q * a.row(r)).eval();
          if (u) u->row(i) -= (q * u->row(r)).eval();
        }
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) {
      a.row(r) = -a.row(r);
      if (u) u->row(r) = -u->row(r);
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      Int q = floor_div(a(i, c), a(r, c));
      if (q != 0) {
        a.row(i) -= (q * a.row(r)).eval();
        if (u) u->row(i) -= (q * u->row(r)).eval();
      }
    }
    ++r;
  }
  a.conservativeResize(r, n);
}

}  // namespace

MatI hnf_rows(const MatI& rows) {
  MatI a = rows;
  hnf_in_place(a, nullptr);
  return a;
}

HnfTransform hnf_rows_transform(const MatI& rows) {
  MatI a = rows;
  MatI u;
  hnf_in_place(a, &u);
  return {a, u};
}

bool in_row_lattice(const MatI& basis, const VecI& x) {
  return solve_row_lattice(basis, x).has_value();
}

std::optional<VecI> solve_row_lattice(const MatI& basis, const VecI& x) {
  // y * H = x by back-substitution on the HNF, then map back through U.
  HnfTransform t = hnf_rows_transform(basis);
  const MatI& h = t.hnf;
  const Eigen::Index r = h.rows(), n = h.cols();
  if (x.size() != n) fail(ErrorKind::Internal, "SizeMismatch", "lattice solve dimensions");
  std::vector<Eigen::Index> pivot_col(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    Eigen::Index c = 0;
    while (c < n && h(i, c) == 0) ++c;
    pivot_col[i] = c;
  }
  VecI rem = x;
  VecI y = VecI::Zero(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    Eigen::Index c = pivot_col[i];
    Int q = rem(c) / h(i, c);
    if (q * h(i, c) != rem(c)) return std::nullopt;
    y(i) = q;
    rem -= (q * h.row(i).transpose()).eval();
  }
  if (!rem.isZero(0)) return std::nullopt;
  // x = y * hnf = y * (top rows of U * basis)  =>  coefficients on basis rows.
  VecI coeff = VecI::Zero(basis.rows());
  for (Eigen::Index i = 0; i < r; ++i)
    coeff += (y(i) * t.u.row(i).transpose()).eval();
  return coeff;
}

VecI reduce_mod_hnf(const MatI& h, VecI x) {
  const Eigen::Index d = h.rows();
  if (h.cols() != d || x.size() != d)
    fail(ErrorKind::Internal, "SizeMismatch", "reduce_mod_hnf dimensions");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (h(i, i) == 0) fail(ErrorKind::Internal, "SingularLattice", "HNF not full rank");
    Int q = floor_div(x(i), h(i, i));
    if (q != 0) x -= (q * h.row(i).transpose()).eval();
  }
  return x;
}

MatI left_kernel(const MatI& m) {
  HnfTransform t = hnf_rows_transform(m);
  const Eigen::Index rank = t.hnf.rows();
  // Rows of U beyond the rank map onto zero.
  return t.u.bottomRows(m.rows() - rank);
}

std::optional<VecI> solve_integer(const MatI& a, const VecI& b) {
  // a * x = b  <=>  x^T * a^T = b^T: solve in the row lattice of a^T.
  return solve_row_lattice(MatI(a.transpose()), b);
}

Int max_abs_minor_all_orders(const MatI& m) {
  const Eigen::Index r = m.rows(), c = m.cols();
  Int best = 0;
  std::vector<Eigen::Index> ri, ci;
  const Eigen::Index kmax = std::min(r, c);
  for (Eigen::Index k = 1; k <= kmax; ++k) {
    std::vector<Eigen::Index> rs(k), cs(k);
    // enumerate k-subsets of rows and columns
    std::function<void(Eigen::Index, Eigen::Index)> rows_rec = [&](Eigen::Index pos, Eigen::Index start) {
      if (pos == k) {
        std::function<void(Eigen::Index, Eigen::Index)> cols_rec = [&](Eigen::Index cpos, Eigen::Index cstart) {
          if (cpos == k) {
            MatI sub(k, k);
            for (Eigen::Index i = 0; i < k; ++i)
              for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
            Int d = abs_int(det_bareiss(sub));
            if (d > best) best = d;
            return;
          }
          for (Eigen::Index t = cstart; t < c; ++t) {
            cs[cpos] = t;
            cols_rec(cpos + 1, t + 1);
          }
        };
        cols_rec(0, 0);
        return;
      }
      for (Eigen::Index t = start; t < r; ++t) {
        rs[pos] = t;
        rows_rec(pos + 1, t + 1);
      }
    };
    rows_rec(0, 0);
  }
  return best;
}

}  // namespace dioph
