#include "limitkit/intlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace limitkit {

IntVector make_int_vector(std::initializer_list<long> values) {
  IntVector v;
  for (long x : values) v.emplace_back(x);
  return v;
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("row length does not match column count");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntVector mat_vec(const IntMatrix& m, const IntVector& v) {
  if (v.size() != m.cols()) throw InputError("matrix-vector dimension mismatch");
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

IntVector vec_mat(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw InputError("vector-matrix dimension mismatch");
  IntVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  return out;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("dot product dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------- SNF

namespace {

// Working state: U * A * V == M and U_inv * M * V_inv == A throughout.
struct SmithState {
  IntMatrix A, U, U_inv, V, V_inv;

  explicit SmithState(const IntMatrix& m)
      : A(m),
        U(IntMatrix::identity(m.rows())),
        U_inv(IntMatrix::identity(m.rows())),
        V(IntMatrix::identity(m.cols())),
        V_inv(IntMatrix::identity(m.cols())) {}

  std::size_t m() const { return A.rows(); }
  std::size_t n() const { return A.cols(); }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n(); ++c) std::swap(A(i, c), A(j, c));
    for (std::size_t r = 0; r < m(); ++r) std::swap(U(r, i), U(r, j));
    for (std::size_t c = 0; c < m(); ++c) std::swap(U_inv(i, c), U_inv(j, c));
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t c = 0; c < n(); ++c) A(i, c) += k * A(j, c);
    for (std::size_t r = 0; r < m(); ++r) U(r, j) -= k * U(r, i);
    for (std::size_t c = 0; c < m(); ++c) U_inv(i, c) += k * U_inv(j, c);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < n(); ++c) A(i, c) = -A(i, c);
    for (std::size_t r = 0; r < m(); ++r) U(r, i) = -U(r, i);
    for (std::size_t c = 0; c < m(); ++c) U_inv(i, c) = -U_inv(i, c);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m(); ++r) std::swap(A(r, i), A(r, j));
    for (std::size_t c = 0; c < n(); ++c) std::swap(V(i, c), V(j, c));
    for (std::size_t r = 0; r < n(); ++r) std::swap(V_inv(r, i), V_inv(r, j));
  }
  // col_j += k * col_i
  void add_col(std::size_t j, std::size_t i, const Integer& k) {
    for (std::size_t r = 0; r < m(); ++r) A(r, j) += k * A(r, i);
    for (std::size_t c = 0; c < n(); ++c) V(i, c) -= k * V(j, c);
    for (std::size_t r = 0; r < n(); ++r) V_inv(r, j) += k * V_inv(r, i);
  }
};

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& input) {
  SmithState s(input);
  const std::size_t lim = std::min(s.m(), s.n());
  std::size_t rank = 0;
  for (std::size_t t = 0; t < lim; ++t) {
    bool finished = false;
    while (true) {
      // Pivot: smallest nonzero |entry| in the trailing block, row-major ties.
      std::size_t pr = 0, pc = 0;
      bool found = false;
      for (std::size_t i = t; i < s.m(); ++i)
        for (std::size_t j = t; j < s.n(); ++j) {
          if (s.A(i, j) == 0) continue;
          if (!found || abs(s.A(i, j)) < abs(s.A(pr, pc))) {
            pr = i;
            pc = j;
            found = true;
          }
        }
      if (!found) {
        finished = true;
        break;
      }
      s.swap_rows(t, pr);
      s.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.m(); ++i) {
        if (s.A(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s.A(i, t).get_mpz_t(), s.A(t, t).get_mpz_t());
        if (q != 0) s.add_row(i, t, -q);
        if (s.A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.n(); ++j) {
        if (s.A(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s.A(t, j).get_mpz_t(), s.A(t, t).get_mpz_t());
        if (q != 0) s.add_col(j, t, -q);
        if (s.A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divisible = true;
      for (std::size_t i = t + 1; i < s.m() && divisible; ++i)
        for (std::size_t j = t + 1; j < s.n(); ++j) {
          if (!mpz_divisible_p(s.A(i, j).get_mpz_t(), s.A(t, t).get_mpz_t())) {
            s.add_row(t, i, 1);
            divisible = false;
            break;
          }
        }
      if (divisible) break;
    }
    if (finished) break;
    if (s.A(t, t) < 0) s.negate_row(t);
    ++rank;
  }
  return SmithForm{std::move(s.U), std::move(s.A), std::move(s.V), std::move(s.U_inv),
                   std::move(s.V_inv), rank};
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
  auto snf = smith_normal_form(m);
  if (!(snf.D == IntMatrix::identity(m.rows())))
    throw PreconditionError("matrix is not unimodular");
  return snf.V_inv * snf.U_inv;
}

// ------------------------------------------------------------------ lattices

namespace {

// Row-style Hermite form of the row span, zero rows dropped.
std::vector<IntVector> hermite_rows(std::vector<IntVector> rows, std::size_t ambient) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ambient && r < rows.size(); ++c) {
    // Euclid down column c among rows r.., accumulating the gcd in row r.
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      while (rows[i][c] != 0) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[i][c].get_mpz_t());
        for (std::size_t k = 0; k < ambient; ++k) rows[r][k] -= q * rows[i][k];
        std::swap(rows[r], rows[i]);
      }
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      for (std::size_t k = 0; k < ambient; ++k) rows[i][k] -= q * rows[r][k];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace

std::size_t Lattice::rank() const {
  if (generators.empty()) return 0;
  return smith_normal_form(IntMatrix::from_rows(generators, ambient)).rank;
}

bool Lattice::contains(const IntVector& v) const {
  if (v.size() != ambient) throw InputError("vector outside the ambient lattice");
  if (generators.empty()) return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
  auto snf = smith_normal_form(IntMatrix::from_rows(generators, ambient));
  IntVector y = vec_mat(v, snf.V_inv);
  for (std::size_t j = 0; j < ambient; ++j) {
    if (j < snf.rank) {
      if (!mpz_divisible_p(y[j].get_mpz_t(), snf.D(j, j).get_mpz_t())) return false;
    } else if (y[j] != 0) {
      return false;
    }
  }
  return true;
}

bool same_lattice(const Lattice& a, const Lattice& b) {
  if (a.ambient != b.ambient) return false;
  return std::all_of(a.generators.begin(), a.generators.end(), [&](const IntVector& v) { return b.contains(v); }) &&
         std::all_of(b.generators.begin(), b.generators.end(), [&](const IntVector& v) { return a.contains(v); });
}

Saturation saturation(const Lattice& lattice) {
  for (const auto& g : lattice.generators)
    if (g.size() != lattice.ambient) throw InputError("lattice generator has the wrong length");
  Saturation out{Lattice{lattice.ambient, {}}, Integer(1)};
  if (lattice.generators.empty()) return out;
  auto snf = smith_normal_form(IntMatrix::from_rows(lattice.generators, lattice.ambient));
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < snf.rank; ++i) {
    basis.push_back(snf.V.row(i));
    out.index *= snf.D(i, i);
  }
  out.closure.generators = hermite_rows(std::move(basis), lattice.ambient);
  return out;
}

UnimodularExtension unimodular_extend(const IntVector& k) {
  const std::size_t n = k.size();
  if (n == 0 || std::all_of(k.begin(), k.end(), [](const Integer& x) { return x == 0; }))
    throw InputError("unimodular_extend needs a nonzero vector");
  IntMatrix alpha = IntMatrix::identity(n);
  IntVector r = k;  // invariant: r == k * alpha
  for (std::size_t j = 1; j < n; ++j) {
    if (r[j] == 0) continue;
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), r[0].get_mpz_t(), r[j].get_mpz_t());
    // Block on coordinates (0, j): [[x, r_j/g], [y, -r_0/g]], determinant -1.
    Integer b01 = r[j] / g, b11 = -r[0] / g;
    for (std::size_t i = 0; i < n; ++i) {
      Integer c0 = alpha(i, 0), cj = alpha(i, j);
      alpha(i, 0) = c0 * x + cj * y;
      alpha(i, j) = c0 * b01 + cj * b11;
    }
    r[0] = g;
    r[j] = 0;
  }
  if (r[0] < 0) {
    for (std::size_t i = 0; i < n; ++i) alpha(i, 0) = -alpha(i, 0);
    r[0] = -r[0];
  }
  return {std::move(alpha), r[0]};
}

}  // namespace limitkit
