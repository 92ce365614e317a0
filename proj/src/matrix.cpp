#include "hochrr/matrix.hpp"

#include <optional>

namespace hochrr {

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::transposed() const {
    ExactMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matrix product");
    ExactMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < b.cols(); ++j)
                if (b.at(k, j) != 0)
                    r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix difference");
    ExactMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

std::vector<Rat> ExactMatrix::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw DimensionMismatch("matrix apply");
    std::vector<Rat> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0)
                r[i] += at(i, j) * v[j];
    return r;
}

std::vector<std::pair<int, int>> ExactMatrix::echelon(ExactMatrix& m) {
    std::vector<std::pair<int, int>> pivots;
    int row = 0;
    for (int col = 0; col < m.cols_ && row < m.rows_; ++col) {
        int p = -1;
        for (int i = row; i < m.rows_; ++i)
            if (m.at(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != row)
            for (int j = 0; j < m.cols_; ++j)
                std::swap(m.at(p, j), m.at(row, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (int j = col; j < m.cols_; ++j)
            m.at(row, j) *= inv;
        for (int i = 0; i < m.rows_; ++i) {
            if (i == row || m.at(i, col) == 0)
                continue;
            Rat f = m.at(i, col);
            for (int j = col; j < m.cols_; ++j)
                m.at(i, j) -= f * m.at(row, j);
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    return pivots;
}

namespace {

// fraction-free Bareiss elimination; T is an exact integer type. Returns
// nullopt when entries outgrow `guard` (zero disables the guard).
template <typename T>
std::optional<int> bareiss_rank(std::vector<std::vector<T>> m, const T& guard) {
    int rows = static_cast<int>(m.size());
    int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    auto too_big = [&](const T& v) { return guard != 0 && (v > guard || -v > guard); };
    int rank = 0;
    T prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][col] != 0 &&
                (piv < 0 || (m[i][col] < 0 ? -m[i][col] : m[i][col]) <
                                (m[piv][col] < 0 ? -m[piv][col] : m[piv][col])))
                piv = i;
        if (piv < 0)
            continue;
        std::swap(m[rank], m[piv]);
        const T p = m[rank][col];
        for (int i = rank + 1; i < rows; ++i) {
            const T f = m[i][col];
            for (int j = col + 1; j < cols; ++j) {
                m[i][j] = (p * m[i][j] - f * m[rank][j]) / prev;
                if (too_big(m[i][j]))
                    return std::nullopt;
            }
            m[i][col] = 0;
        }
        if (too_big(p))
            return std::nullopt;
        prev = p;
        ++rank;
    }
    return rank;
}

}  // namespace

int ExactMatrix::rank() const {
    // clear denominators rowwise, then eliminate fraction-free
    std::vector<std::vector<Int>> m(rows_, std::vector<Int>(cols_));
    for (int i = 0; i < rows_; ++i) {
        Int l = 1;
        for (int j = 0; j < cols_; ++j)
            l = lcm(l, denominator(at(i, j)));
        for (int j = 0; j < cols_; ++j)
            m[i][j] = numerator(at(i, j)) * (l / denominator(at(i, j)));
    }
    // machine-word fast path with an overflow guard
    bool fits = true;
    std::vector<std::vector<__int128>> f(rows_, std::vector<__int128>(cols_));
    const Int limit = Int(1) << 60;
    for (int i = 0; fits && i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (m[i][j] > limit || -m[i][j] > limit) {
                fits = false;
                break;
            }
            f[i][j] = static_cast<__int128>(static_cast<long long>(m[i][j]));
        }
    if (fits) {
        auto r = bareiss_rank<__int128>(std::move(f), static_cast<__int128>(1) << 62);
        if (r.has_value())
            return *r;
    }
    return *bareiss_rank<Int>(std::move(m), Int(0));
}

std::vector<int> ExactMatrix::pivot_columns() const {
    ExactMatrix m = *this;
    auto pivots = echelon(m);
    std::vector<int> cols;
    cols.reserve(pivots.size());
    for (auto& [r, c] : pivots)
        cols.push_back(c);
    return cols;
}

std::vector<std::vector<Rat>> ExactMatrix::kernel_basis() const {
    ExactMatrix m = *this;
    auto pivots = echelon(m);
    std::vector<int> pivot_of_col(cols_, -1);
    for (auto& [r, c] : pivots)
        pivot_of_col[c] = r;
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < cols_; ++c) {
        if (pivot_of_col[c] >= 0)
            continue;
        std::vector<Rat> v(cols_);
        v[c] = 1;
        for (auto& [pr, pc] : pivots)
            v[pc] = -m.at(pr, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> ExactMatrix::solve(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != rows_)
        throw DimensionMismatch("solve: rhs size");
    ExactMatrix m(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            m.at(i, j) = at(i, j);
        m.at(i, cols_) = v[i];
    }
    auto pivots = echelon(m);
    std::vector<Rat> x(cols_);
    for (auto& [r, c] : pivots) {
        if (c == cols_)
            return std::nullopt;  // pivot in the rhs column: inconsistent
        x[c] = m.at(r, cols_);
    }
    return x;
}

std::optional<ExactMatrix> ExactMatrix::inverse() const {
    if (rows_ != cols_)
        throw DimensionMismatch("inverse: square required");
    ExactMatrix m(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            m.at(i, j) = at(i, j);
        m.at(i, cols_ + i) = 1;
    }
    auto pivots = echelon(m);
    if (static_cast<int>(pivots.size()) < rows_)
        return std::nullopt;
    for (auto& [r, c] : pivots)
        if (c >= cols_)
            return std::nullopt;
    ExactMatrix inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            inv.at(i, j) = m.at(i, cols_ + j);
    return inv;
}

}  // namespace hochrr
