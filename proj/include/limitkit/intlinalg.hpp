#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "limitkit/errors.hpp"

namespace limitkit {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

IntVector make_int_vector(std::initializer_list<long> values);

inline Integer to_integer(long long x) { return Integer(static_cast<long>(x)); }
/// Throws InputError when x does not fit in a machine integer.
inline long long to_exponent(const Integer& x) {
  if (!x.fits_slong_p()) throw InputError("exponent does not fit in a machine integer");
  return x.get_si();
}

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool is_zero() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant by fraction-free elimination (Bareiss).
Integer determinant(const IntMatrix& m);
inline bool is_unimodular(const IntMatrix& m) {
  return m.rows() == m.cols() && abs(determinant(m)) == 1;
}
/// Inverse of a unimodular matrix; throws PreconditionError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

IntVector mat_vec(const IntMatrix& m, const IntVector& v);  // m * v (column)
IntVector vec_mat(const IntVector& v, const IntMatrix& m);  // v * m (row)
Integer dot(const IntVector& a, const IntVector& b);

struct SmithForm {
  IntMatrix U, D, V;          // M = U * D * V
  IntMatrix U_inv, V_inv;     // D = U_inv * M * V_inv
  std::size_t rank = 0;       // number of nonzero diagonal entries
  std::vector<Integer> diagonal() const;
};

/// Smith normal form with the pivot rule: smallest nonzero absolute value,
/// ties broken by row-major position. Diagonal entries are non-negative and
/// each divides the next.
SmithForm smith_normal_form(const IntMatrix& m);

/// Sublattice of Z^ambient spanned by integer tuples.
struct Lattice {
  std::size_t ambient = 0;
  std::vector<IntVector> generators;

  std::size_t rank() const;
  bool contains(const IntVector& v) const;
  bool operator==(const Lattice&) const = default;
};

struct Saturation {
  Lattice closure;  // basis in Hermite form
  Integer index;    // [closure : lattice]
};

/// Vectors killed by every integer functional that kills the lattice.
Saturation saturation(const Lattice& lattice);

/// Equal as subgroups of Z^ambient.
bool same_lattice(const Lattice& a, const Lattice& b);

struct UnimodularExtension {
  IntMatrix alpha;  // k * alpha == (d, 0, ..., 0)
  Integer d;        // gcd(k) > 0
};

/// Unimodular matrix whose first column pairs with k to gcd(k) and whose
/// remaining columns span the kernel of v -> <k, v>. Throws InputError when
/// k is zero.
UnimodularExtension unimodular_extend(const IntVector& k);

}  // namespace limitkit
