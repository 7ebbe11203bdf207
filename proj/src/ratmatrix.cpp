#include "ksr/ratmatrix.hpp"

#include "ksr/errors.hpp"

namespace ksr {

MatQ MatQ::identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatQ MatQ::outer(const std::vector<Rat>& v) {
    int n = static_cast<int>(v.size());
    MatQ m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = v[i] * v[j];
    return m;
}

MatQ MatQ::operator+(const MatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInputError("MatQ: shape mismatch");
    MatQ r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

MatQ MatQ::operator-(const MatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInputError("MatQ: shape mismatch");
    MatQ r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

MatQ MatQ::operator*(const MatQ& o) const {
    if (cols_ != o.rows_) throw InvalidInputError("MatQ: shape mismatch in product");
    MatQ r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

MatQ MatQ::operator*(const Rat& s) const {
    MatQ r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

Rat MatQ::trace() const {
    if (rows_ != cols_) throw InvalidInputError("MatQ: trace of non-square matrix");
    Rat t(0);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

bool MatQ::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

Rat det(MatQ m) {
    if (m.rows() != m.cols()) throw InvalidInputError("det of non-square matrix");
    int n = m.rows();
    Rat result(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            result = -result;
        }
        result *= m.at(col, col);
        Rat inv = Rat(1) / m.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (m.at(r, col) == 0) continue;
            Rat f = m.at(r, col) * inv;
            for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
        }
    }
    return result;
}

UnivariatePoly char_poly(const MatQ& m) {
    if (m.rows() != m.cols()) throw InvalidInputError("char_poly of non-square matrix");
    int n = m.rows();
    // Faddeev-LeVerrier: chi(x) = x^n + c_{n-1} x^{n-1} + ... + c_0
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    MatQ Mk = m;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            MatQ shifted = Mk;
            for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
            Mk = m * shifted;
        }
        c[n - k] = -Mk.trace() / k;
    }
    return UnivariatePoly(std::move(c));
}

UnivariatePoly char_poly_x2(const MatQ& m) {
    if (m.rows() != m.cols()) throw InvalidInputError("char_poly_x2 of non-square matrix");
    if (!m.is_symmetric()) throw PreconditionError("char_poly_x2 requires a symmetric matrix");
    return char_poly(m).compose_x_squared();
}

Rat sigma_k(const MatQ& m, int k) {
    if (k < 0 || k > m.rows()) return Rat(0);
    if (k == 0) return Rat(1);
    UnivariatePoly chi = char_poly(m);
    Rat c = chi.coeff(m.rows() - k);
    return (k % 2 == 0) ? c : -c;
}

bool is_psd(const MatQ& m) {
    if (!m.is_symmetric()) throw PreconditionError("is_psd requires a symmetric matrix");
    UnivariatePoly chi = char_poly(m);
    int n = m.rows();
    for (int k = 1; k <= n; ++k) {
        Rat s = (k % 2 == 0) ? chi.coeff(n - k) : -chi.coeff(n - k);
        if (sgn(s) < 0) return false;
    }
    return true;
}

VectorSystem::VectorSystem(int d, std::vector<std::vector<Rat>> vectors)
    : d_(d), vectors_(std::move(vectors)), eps2_(0) {
    if (d_ < 1) throw InvalidInputError("VectorSystem: dimension must be positive");
    for (const auto& v : vectors_) {
        if (static_cast<int>(v.size()) != d_)
            throw InvalidInputError("VectorSystem: vector length does not match dimension");
        Rat ns(0);
        for (const Rat& x : v) ns += x * x;
        if (ns > eps2_) eps2_ = ns;
    }
}

Rat VectorSystem::norm_sq(int i) const { return dot(i, i); }

Rat VectorSystem::dot(int i, int j) const {
    Rat s(0);
    for (int k = 0; k < d_; ++k) s += vectors_[i][k] * vectors_[j][k];
    return s;
}

MatQ VectorSystem::sum_outer(uint64_t subset_mask) const {
    MatQ m(d_, d_);
    for (int i = 0; i < count(); ++i) {
        if (!(subset_mask >> i & 1)) continue;
        for (int a = 0; a < d_; ++a) {
            if (vectors_[i][a] == 0) continue;
            for (int b = 0; b < d_; ++b) m.at(a, b) += vectors_[i][a] * vectors_[i][b];
        }
    }
    return m;
}

MatQ VectorSystem::gram(const std::vector<int>& idx) const {
    int k = static_cast<int>(idx.size());
    MatQ g(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) g.at(a, b) = dot(idx[a], idx[b]);
    return g;
}

Rat VectorSystem::gram_det(const std::vector<int>& idx) const { return det(gram(idx)); }

bool VectorSystem::is_isotropic() const {
    uint64_t all = count() >= 64 ? ~uint64_t(0) : (uint64_t(1) << count()) - 1;
    return sum_outer(all) == MatQ::identity(d_);
}

bool VectorSystem::is_sub_isotropic() const {
    uint64_t all = count() >= 64 ? ~uint64_t(0) : (uint64_t(1) << count()) - 1;
    return is_psd(MatQ::identity(d_) - sum_outer(all));
}

VectorSystem VectorSystem::lift_blocks(int r) const {
    if (r < 1) throw InvalidInputError("lift_blocks: r must be positive");
    std::vector<std::vector<Rat>> lifted;
    lifted.reserve(size_t(count()) * r);
    for (int i = 0; i < count(); ++i) {
        for (int j = 0; j < r; ++j) {
            std::vector<Rat> w(size_t(d_) * r, Rat(0));
            for (int k = 0; k < d_; ++k) w[size_t(j) * d_ + k] = vectors_[i][k];
            lifted.push_back(std::move(w));
        }
    }
    return VectorSystem(d_ * r, std::move(lifted));
}

}  // namespace ksr
