#ifndef KSR_RATMATRIX_HPP
#define KSR_RATMATRIX_HPP

#include <cstdint>
#include <vector>

#include "ksr/rational.hpp"
#include "ksr/univariate.hpp"

namespace ksr {

/// Dense rational matrix, row-major.
class MatQ {
  public:
    MatQ() = default;
    MatQ(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rat(0)) {}
    static MatQ identity(int n);
    static MatQ outer(const std::vector<Rat>& v);  // v v^T

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    MatQ operator+(const MatQ& o) const;
    MatQ operator-(const MatQ& o) const;
    MatQ operator*(const MatQ& o) const;
    MatQ operator*(const Rat& s) const;
    bool operator==(const MatQ& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    Rat trace() const;
    bool is_symmetric() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Exact determinant by fraction Gaussian elimination.
Rat det(MatQ m);

/// chi[M](x) = det(xI - M), exact (Faddeev-LeVerrier).
UnivariatePoly char_poly(const MatQ& m);

/// chi[M](x^2) = det(x^2 I - M); requires M symmetric.
UnivariatePoly char_poly_x2(const MatQ& m);

/// Sum of k x k principal minors, from the characteristic polynomial.
Rat sigma_k(const MatQ& m, int k);

/// Symmetric M is PSD iff every sigma_k is nonnegative.
bool is_psd(const MatQ& m);

/// Rational vectors v_1..v_m in dimension d with an exact max-squared-norm
/// bound. Isotropy flags are computed from exact matrix identities.
class VectorSystem {
  public:
    VectorSystem(int d, std::vector<std::vector<Rat>> vectors);

    int dim() const { return d_; }
    int count() const { return static_cast<int>(vectors_.size()); }
    const std::vector<Rat>& vector(int i) const { return vectors_[i]; }
    const std::vector<std::vector<Rat>>& vectors() const { return vectors_; }

    Rat norm_sq(int i) const;
    const Rat& eps2() const { return eps2_; }  // max_i ||v_i||^2

    Rat dot(int i, int j) const;
    MatQ sum_outer(uint64_t subset_mask) const;  // sum over i in mask of v_i v_i^T
    MatQ gram(const std::vector<int>& idx) const;

    /// det of the Gram matrix of the indexed vectors; for |S| = k this equals
    /// sigma_k of the corresponding outer-product sum.
    Rat gram_det(const std::vector<int>& idx) const;

    bool is_isotropic() const;      // sum v_i v_i^T == I exactly
    bool is_sub_isotropic() const;  // sum v_i v_i^T <= I (PSD complement)

    /// Lifted system for r-partitioning: w_{i,j} places v_i in block j of
    /// dimension d*r; element (i,j) maps to index i*r + j.
    VectorSystem lift_blocks(int r) const;

  private:
    int d_;
    std::vector<std::vector<Rat>> vectors_;
    Rat eps2_;
};

}  // namespace ksr

#endif
