#pragma once

// Dense matrices over F_p and the handful of exact algorithms everything
// else is built on: rank, kernel, solving, echelon forms, block assembly.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "philab/field.hpp"

namespace philab {

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    /// Entries are arbitrary integers, reduced mod p.
    static Matrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows);
    static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols_if_empty = 0);
    static Matrix identity(std::size_t n);
    static Matrix column(std::span<const Scalar> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::vector<Scalar> col(std::size_t c) const;

    const std::vector<Scalar>& data() const { return data_; }

    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    /// Selects the given columns, in order.
    Matrix columns(std::span<const std::size_t> idx) const;
    Matrix rows_subset(std::span<const std::size_t> idx) const;

    static Matrix hstack(std::span<const Matrix> parts, std::size_t rows);
    static Matrix vstack(std::span<const Matrix> parts, std::size_t cols);
    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);
    static Matrix direct_sum(const Matrix& a, const Matrix& b);

    Matrix operator*(const Matrix& b) const;
    Matrix operator+(const Matrix& b) const;
    Matrix operator-(const Matrix& b) const;
    Matrix operator-() const;
    Matrix scaled(Scalar s) const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    Matrix reduced;                    // only the first pivots.size() rows are nonzero
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

Echelon rref(Matrix m);

std::size_t rank(const Matrix& m);

/// Columns form a basis of {v : m v = 0}; there are cols - rank of them.
Matrix kernel_basis(const Matrix& m);

/// Returns x with a x = b, or nullopt when some column of b lies outside
/// the column space of a. Free variables are set to zero, so a zero
/// right-hand side gives the zero solution.
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

bool is_invertible(const Matrix& m);

/// Indices of a maximal linearly independent subset of the columns,
/// chosen greedily from the left.
std::vector<std::size_t> independent_columns(const Matrix& m);

/// Basis (as columns) of the column space of m.
Matrix image_basis(const Matrix& m);

/// Greedy left-to-right choice of candidate columns that extend span(base)
/// to span(base) + span(candidates). Returns indices into candidates.
std::vector<std::size_t> complement_columns(const Matrix& base, const Matrix& candidates);

}  // namespace philab
