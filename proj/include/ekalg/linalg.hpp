#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ekalg/errors.hpp"
#include "ekalg/prime.hpp"

namespace ekalg {

// Sparse column vector over F_p: (row, coefficient) pairs, rows strictly
// increasing, coefficients nonzero in [1, p).
using SparseEntry = std::pair<int64_t, uint32_t>;
using SparseColumn = std::vector<SparseEntry>;
using DenseVec = std::vector<uint32_t>;

// Sorts entries, merges duplicate rows mod p, drops zeros.
inline SparseColumn normalize_column(const Prime& p, SparseColumn col)
{
    std::sort(col.begin(), col.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.first < b.first; });
    SparseColumn out;
    for (const auto& [row, c] : col) {
        uint32_t v = c % p.value();
        if (!out.empty() && out.back().first == row) {
            out.back().second = p.add(out.back().second, v);
            if (out.back().second == 0)
                out.pop_back();
        }
        else if (v != 0) {
            out.emplace_back(row, v);
        }
    }
    return out;
}

// Matrix over F_p stored as a list of sparse columns.
struct SparseMatrix {
    int64_t rows = 0;
    std::vector<SparseColumn> columns;

    SparseMatrix() = default;
    SparseMatrix(int64_t rows_, int64_t cols_) : rows(rows_), columns(cols_) {}

    int64_t cols() const { return static_cast<int64_t>(columns.size()); }

    void set_column(const Prime& p, int64_t j, SparseColumn col)
    {
        col = normalize_column(p, std::move(col));
        if (!col.empty() && (col.front().first < 0 || col.back().first >= rows))
            throw DimensionMismatch("column entry row out of range");
        columns.at(static_cast<size_t>(j)) = std::move(col);
    }

    DenseVec apply(const Prime& p, const DenseVec& x) const
    {
        if (static_cast<int64_t>(x.size()) != cols())
            throw DimensionMismatch("vector length does not match column count");
        DenseVec y(static_cast<size_t>(rows), 0);
        for (int64_t j = 0; j < cols(); ++j) {
            uint32_t c = x[static_cast<size_t>(j)] % p.value();
            if (c == 0)
                continue;
            for (const auto& [row, v] : columns[static_cast<size_t>(j)])
                y[static_cast<size_t>(row)] = p.add(y[static_cast<size_t>(row)], p.mul(c, v));
        }
        return y;
    }
};

// Incremental column echelon form. Pivot columns are normalized so that the
// minimal nonzero row carries coefficient 1; all other entries of a pivot
// column sit strictly below its pivot row, so reduction is a single ascending
// sweep over candidate rows.
class Echelon {
  public:
    Echelon(const Prime& p, int64_t rows) : p_(p), rows_(rows), work_(static_cast<size_t>(rows), 0)
    {
        if (rows < 0)
            throw DimensionMismatch("negative row count");
    }

    int64_t rank() const { return static_cast<int64_t>(pivots_.size()); }
    int64_t rows() const { return rows_; }
    bool has_pivot(int64_t row) const { return pivot_of_row_.count(row) != 0; }

    // Reduces col against the stored pivots. The residual has no support on
    // pivot rows. If `used` is non-null, records (pivot index, coefficient)
    // for each elimination step.
    SparseColumn reduce(const SparseColumn& col,
                        std::vector<std::pair<size_t, uint32_t>>* used = nullptr) const
    {
        std::priority_queue<int64_t, std::vector<int64_t>, std::greater<int64_t>> heap;
        for (const auto& [row, c] : col) {
            if (row < 0 || row >= rows_)
                throw DimensionMismatch("column entry row out of range");
            if (work_[static_cast<size_t>(row)] == 0 && c % p_.value() != 0)
                heap.push(row);
            work_[static_cast<size_t>(row)] =
                p_.add(work_[static_cast<size_t>(row)], c % p_.value());
        }
        SparseColumn residual;
        while (!heap.empty()) {
            int64_t row = heap.top();
            heap.pop();
            uint32_t v = work_[static_cast<size_t>(row)];
            if (v == 0)
                continue;
            auto it = pivot_of_row_.find(row);
            if (it == pivot_of_row_.end()) {
                residual.emplace_back(row, v);
                work_[static_cast<size_t>(row)] = 0;
                continue;
            }
            // Pivot leading coefficient is 1, so subtracting v * pivot zeroes this row.
            if (used)
                used->emplace_back(it->second, v);
            for (const auto& [prow, pc] : pivots_[it->second]) {
                uint32_t& cell = work_[static_cast<size_t>(prow)];
                bool was_zero = (cell == 0);
                cell = p_.sub(cell, p_.mul(v, pc));
                if (was_zero && cell != 0 && prow != row)
                    heap.push(prow);
            }
        }
        return residual;
    }

    // Reduces col and, if anything survives, stores it as a new pivot.
    // Returns true when the rank grew. `lead_out` receives the leading
    // coefficient the residual was divided by when it became a pivot.
    bool add(const SparseColumn& col, std::vector<std::pair<size_t, uint32_t>>* used = nullptr,
             uint32_t* lead_out = nullptr)
    {
        SparseColumn residual = reduce(col, used);
        if (residual.empty())
            return false;
        uint32_t lead = residual.front().second;
        if (lead_out)
            *lead_out = lead;
        if (lead != 1) {
            uint32_t s = p_.inv(lead);
            for (auto& [row, c] : residual)
                c = p_.mul(c, s);
        }
        pivot_of_row_.emplace(residual.front().first, pivots_.size());
        pivots_.push_back(std::move(residual));
        return true;
    }

    const SparseColumn& pivot(size_t idx) const { return pivots_[idx]; }

  private:
    Prime p_;
    int64_t rows_;
    std::unordered_map<int64_t, size_t> pivot_of_row_;
    std::vector<SparseColumn> pivots_;
    mutable DenseVec work_;
};

inline int64_t rank(const Prime& p, const SparseMatrix& m)
{
    Echelon e(p, m.rows);
    for (const auto& col : m.columns)
        e.add(col);
    return e.rank();
}

struct RankKernel {
    int64_t rank = 0;
    std::vector<DenseVec> kernel;
};

// Column rank plus an explicit kernel basis (vectors v with M v = 0).
inline RankKernel rank_kernel(const Prime& p, const SparseMatrix& m)
{
    Echelon e(p, m.rows);
    RankKernel result;
    // exprs[k] writes pivot column k as a combination of original columns
    std::vector<DenseVec> exprs;
    const size_t ncols = static_cast<size_t>(m.cols());
    for (size_t j = 0; j < ncols; ++j) {
        std::vector<std::pair<size_t, uint32_t>> used;
        uint32_t lead = 1;
        if (e.add(m.columns[j], &used, &lead)) {
            // stored pivot = (col_j - sum used) / lead, so scale the expression alike
            DenseVec expr(ncols, 0);
            expr[j] = 1;
            for (const auto& [k, c] : used)
                for (size_t i = 0; i <= j; ++i)
                    expr[i] = p.sub(expr[i], p.mul(c, exprs[k][i]));
            uint32_t s = p.inv(lead);
            for (auto& c : expr)
                c = p.mul(c, s);
            exprs.push_back(std::move(expr));
        }
        else {
            DenseVec v(ncols, 0);
            v[j] = 1;
            for (const auto& [k, c] : used)
                for (size_t i = 0; i <= j; ++i)
                    v[i] = p.sub(v[i], p.mul(c, exprs[k][i]));
            result.kernel.push_back(std::move(v));
        }
    }
    result.rank = e.rank();
    return result;
}

// Solves M x = b if possible.
inline std::optional<DenseVec> solve(const Prime& p, const SparseMatrix& m, const SparseColumn& b)
{
    SparseMatrix aug(m.rows, m.cols() + 1);
    aug.columns = m.columns;
    aug.columns.push_back(normalize_column(p, b));
    RankKernel rk = rank_kernel(p, aug);
    for (const auto& v : rk.kernel) {
        uint32_t last = v.back();
        if (last != 0) {
            // v = (x', c) with M x' + c b = 0, so x = -x' / c
            uint32_t s = p.inv(p.neg(last));
            DenseVec x(v.begin(), v.end() - 1);
            for (auto& c : x)
                c = p.mul(c, s);
            return x;
        }
    }
    return std::nullopt;
}

}  // namespace ekalg
