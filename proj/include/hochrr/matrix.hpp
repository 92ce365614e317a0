#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hochrr/rational.hpp"

namespace hochrr {

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense matrix over Rat with exact Gaussian elimination. Pivoting is
// deterministic (first nonzero entry in row-major order), so ranks, kernel
// bases and solutions are reproducible across runs.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static ExactMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    ExactMatrix transposed() const;
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

    std::vector<Rat> apply(const std::vector<Rat>& v) const;

    int rank() const;
    // Basis of the right kernel, one vector per column of the result.
    std::vector<std::vector<Rat>> kernel_basis() const;
    // One exact solution of Mx = v, or nullopt when inconsistent.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& v) const;
    // Column indices of a maximal independent set of columns (pivot columns).
    std::vector<int> pivot_columns() const;

    std::optional<ExactMatrix> inverse() const;

private:
    // Row echelon form; returns pivot (row,col) pairs. Operates in place.
    static std::vector<std::pair<int, int>> echelon(ExactMatrix& m);

    int rows_, cols_;
    std::vector<Rat> a_;
};

}  // namespace hochrr
