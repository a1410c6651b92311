#include "philab/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace philab {

namespace {

constexpr std::uint64_t kM31 = 0x7fffffffULL;

struct MersenneReduce {
    static Scalar apply(std::uint64_t x) {
        x = (x & kM31) + (x >> 31);
        x = (x & kM31) + (x >> 31);
        return static_cast<Scalar>(x >= kM31 ? x - kM31 : x);
    }
};

struct GenericReduce {
    static Scalar apply(std::uint64_t x) { return static_cast<Scalar>(x % field::modulus()); }
};

// dst[j] += c * src[j] for j in [0, n)
template <class R>
void axpy(Scalar* __restrict dst, const Scalar* __restrict src, Scalar c, std::size_t n) {
    const std::uint64_t cc = c;
    for (std::size_t j = 0; j < n; ++j) dst[j] = R::apply(dst[j] + cc * src[j]);
}

template <class R>
void scale_row(Scalar* row, Scalar c, std::size_t n) {
    const std::uint64_t cc = c;
    for (std::size_t j = 0; j < n; ++j) row[j] = R::apply(cc * row[j]);
}

template <class R>
Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    Matrix c(n, m);
    if (n == 0 || m == 0 || k == 0) return c;
    std::vector<std::uint64_t> acc(m);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        int pending = 0;
        auto arow = a.row(i);
        for (std::size_t t = 0; t < k; ++t) {
            const std::uint64_t x = arow[t];
            if (x == 0) continue;
            auto brow = b.row(t);
            for (std::size_t j = 0; j < m; ++j) acc[j] += x * brow[j];
            if (++pending == 3) {
                for (std::size_t j = 0; j < m; ++j) acc[j] = R::apply(acc[j]);
                pending = 0;
            }
        }
        auto crow = c.row(i);
        for (std::size_t j = 0; j < m; ++j) crow[j] = R::apply(acc[j]);
    }
    return c;
}

template <class R>
Echelon rref_impl(Matrix m) {
    Echelon e;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (m(i, c) != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows) continue;
        if (piv != r) {
            auto a = m.row(piv), b = m.row(r);
            std::swap_ranges(a.begin() + c, a.end(), b.begin() + c);
        }
        Scalar* prow = m.row(r).data();
        const std::size_t len = cols - c;
        scale_row<R>(prow + c, field::inv(prow[c]), len);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            Scalar* irow = m.row(i).data();
            Scalar f = irow[c];
            if (f == 0) continue;
            axpy<R>(irow + c, prow + c, field::neg(f), len);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

}  // namespace

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<std::int64_t>> v;
    for (auto& r : rows) v.emplace_back(r);
    return from_rows(v);
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols_if_empty) {
    std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = field::from_int(rows[i][j]);
    }
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::column(std::span<const Scalar> v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

std::vector<Scalar> Matrix::col(std::size_t c) const {
    std::vector<Scalar> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("Matrix::block");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        std::copy_n(data_.begin() + (r0 + i) * cols_ + c0, nc, b.data_.begin() + i * nc);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("Matrix::set_block");
    for (std::size_t i = 0; i < b.rows_; ++i)
        std::copy_n(b.data_.begin() + i * b.cols_, b.cols_, data_.begin() + (r0 + i) * cols_ + c0);
}

Matrix Matrix::columns(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
}

Matrix Matrix::rows_subset(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy_n(data_.begin() + idx[i] * cols_, cols_, m.data_.begin() + i * cols_);
    return m;
}

Matrix Matrix::hstack(std::span<const Matrix> parts, std::size_t rows) {
    std::size_t cols = 0;
    for (auto& p : parts) {
        if (p.rows() != rows) throw std::invalid_argument("hstack: row mismatch");
        cols += p.cols();
    }
    Matrix m(rows, cols);
    std::size_t c = 0;
    for (auto& p : parts) {
        m.set_block(0, c, p);
        c += p.cols();
    }
    return m;
}

Matrix Matrix::vstack(std::span<const Matrix> parts, std::size_t cols) {
    std::size_t rows = 0;
    for (auto& p : parts) {
        if (p.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
        rows += p.rows();
    }
    Matrix m(rows, cols);
    std::size_t r = 0;
    for (auto& p : parts) {
        m.set_block(r, 0, p);
        r += p.rows();
    }
    return m;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    Matrix parts[2] = {a, b};
    return hstack(parts, a.rows());
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    Matrix parts[2] = {a, b};
    return vstack(parts, a.cols());
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

Matrix Matrix::operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    return field::is_mersenne31() ? multiply<MersenneReduce>(*this, b) : multiply<GenericReduce>(*this, b);
}

Matrix Matrix::operator+(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("Matrix sum: shape mismatch");
    Matrix c(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = field::add(data_[i], b.data_[i]);
    return c;
}

Matrix Matrix::operator-(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("Matrix difference: shape mismatch");
    Matrix c(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = field::sub(data_[i], b.data_[i]);
    return c;
}

Matrix Matrix::operator-() const {
    Matrix c(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = field::neg(data_[i]);
    return c;
}

Matrix Matrix::scaled(Scalar s) const {
    Matrix c(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = field::mul(data_[i], s);
    return c;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? " [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << field::to_signed(m(i, j));
        os << ']';
    }
    return os << ']';
}

Echelon rref(Matrix m) {
    return field::is_mersenne31() ? rref_impl<MersenneReduce>(std::move(m)) : rref_impl<GenericReduce>(std::move(m));
}

std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    // Work on the shorter side.
    return m.rows() <= m.cols() ? rref(m).rank() : rref(m.transpose()).rank();
}

Matrix kernel_basis(const Matrix& m) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return Matrix::identity(n);
    Echelon e = rref(m);
    std::vector<char> is_pivot(n, 0);
    for (auto c : e.pivots) is_pivot[c] = 1;
    Matrix k(n, n - e.rank());
    std::size_t col = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        k(f, col) = 1;
        for (std::size_t r = 0; r < e.rank(); ++r) k(e.pivots[r], col) = field::neg(e.reduced(r, f));
        ++col;
    }
    return k;
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_right: row mismatch");
    const std::size_t n = a.cols();
    if (a.rows() == 0) return Matrix(n, b.cols());
    Echelon e = rref(Matrix::hcat(a, b));
    Matrix x(n, b.cols());
    for (std::size_t r = 0; r < e.rank(); ++r) {
        if (e.pivots[r] >= n) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, n + j);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    Echelon e = rref(Matrix::hcat(m, Matrix::identity(n)));
    if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    return e.reduced.block(0, n, n, n);
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::vector<std::size_t> independent_columns(const Matrix& m) {
    if (m.rows() == 0) return {};
    return rref(m).pivots;
}

Matrix image_basis(const Matrix& m) {
    auto idx = independent_columns(m);
    return m.columns(idx);
}

std::vector<std::size_t> complement_columns(const Matrix& base, const Matrix& candidates) {
    Echelon e = rref(Matrix::hcat(base, candidates));
    std::vector<std::size_t> out;
    for (auto c : e.pivots)
        if (c >= base.cols()) out.push_back(c - base.cols());
    return out;
}

}  // namespace philab
