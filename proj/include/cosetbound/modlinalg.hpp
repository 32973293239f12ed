/*
   Copyright 2026 The cosetbound authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef COSETBOUND_MODLINALG_HPP
#define COSETBOUND_MODLINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "ffield.hpp"

namespace cosetbound {

/// Dense row-major matrix over F_p. Sizes are capped by an entry limit so a
/// bad parameter choice fails fast instead of exhausting memory.
class MatFp {
   public:
    static constexpr std::uint64_t kDefaultEntryLimit = 100000000ULL;  // 10^8 entries

    MatFp(const FieldCtx& ctx, std::size_t rows, std::size_t cols,
          std::uint64_t entry_limit = kDefaultEntryLimit)
        : ctx_(ctx), rows_(rows), cols_(cols) {
        std::uint64_t total = static_cast<std::uint64_t>(rows) * cols;
        if (cols != 0 && total / cols != rows) throw Overflow("matrix dimensions overflow");
        if (total > entry_limit)
            throw Overflow("matrix of " + std::to_string(total) + " entries exceeds the limit of " +
                           std::to_string(entry_limit));
        a_.assign(static_cast<std::size_t>(total), 0);
    }

    static MatFp from_rows(const FieldCtx& ctx, const std::vector<std::vector<Elt>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        MatFp m(ctx, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        return m;
    }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elt& at(std::size_t i, std::size_t j) noexcept { return a_[i * cols_ + j]; }
    Elt at(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }
    Elt* row(std::size_t i) noexcept { return a_.data() + i * cols_; }
    const Elt* row(std::size_t i) const noexcept { return a_.data() + i * cols_; }

    /// M * v over F_p.
    std::vector<Elt> apply(const std::vector<Elt>& v) const {
        std::vector<Elt> out(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            const Elt* r = row(i);
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) {
                acc += static_cast<std::uint64_t>(r[j]) * v[j];
                if (acc >= (1ULL << 62)) acc = ctx_.reduce(acc);
            }
            out[i] = ctx_.reduce(acc);
        }
        return out;
    }

   private:
    FieldCtx ctx_;
    std::size_t rows_, cols_;
    std::vector<Elt> a_;
};

namespace detail {

/// In-place row echelon form with normalized (= 1) pivots. The pivot of each
/// column is the first row with a nonzero entry, so the result is
/// deterministic. Returns the pivot columns in order.
inline std::vector<std::size_t> echelonize(std::vector<Elt>& a, std::size_t rows, std::size_t cols,
                                           const FieldCtx& ctx) {
    std::vector<std::size_t> pivots;
    const std::uint64_t p = ctx.p();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && a[pr * cols + c] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(a[r * cols + j], a[pr * cols + j]);
        Elt* prow = &a[r * cols];
        Elt inv = ctx.inv(prow[c]);
        for (std::size_t j = c; j < cols; ++j) prow[j] = ctx.mul(prow[j], inv);
        for (std::size_t i = r + 1; i < rows; ++i) {
            Elt* irow = &a[i * cols];
            std::uint64_t f = irow[c];
            if (f == 0) continue;
            irow[c] = 0;
            for (std::size_t j = c + 1; j < cols; ++j)
                irow[j] = ctx.reduce(irow[j] + f * (p - prow[j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// One kernel vector of an echelonized system, or nullopt if the kernel is
/// trivial. The vector sets the first free variable to 1 and all other free
/// variables to 0; pivot variables come from back substitution.
inline std::optional<std::vector<Elt>> kernel_from_echelon(const std::vector<Elt>& a, std::size_t cols,
                                                           const std::vector<std::size_t>& pivots,
                                                           const FieldCtx& ctx) {
    if (pivots.size() == cols) return std::nullopt;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (free_col < cols && is_pivot[free_col]) ++free_col;

    std::vector<Elt> v(cols, 0);
    v[free_col] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
        const Elt* row = &a[k * cols];
        std::size_t pc = pivots[k];
        std::uint64_t acc = 0;
        for (std::size_t j = pc + 1; j < cols; ++j) {
            if (v[j] == 0) continue;
            acc += static_cast<std::uint64_t>(row[j]) * v[j];
            if (acc >= (1ULL << 62)) acc = ctx.reduce(acc);
        }
        v[pc] = ctx.neg(ctx.reduce(acc));  // pivot entry is 1
    }
    return v;
}

}  // namespace detail

/// Rank over F_p.
inline std::size_t rank(const MatFp& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    std::vector<Elt> a(m.row(0), m.row(0) + m.rows() * m.cols());
    return detail::echelonize(a, m.rows(), m.cols(), m.ctx()).size();
}

/// A nonzero v with M v = 0, canonicalized so its first nonzero entry is 1,
/// or nullopt when the kernel is trivial. For matrices with more columns
/// than rows the solve runs on the leading rows+1 columns: that submatrix
/// already has a nontrivial kernel, and zero-extending its kernel vector
/// gives a kernel vector of the full matrix at a fraction of the cost.
inline std::optional<std::vector<Elt>> nullspace_vector(const MatFp& m) {
    const FieldCtx& ctx = m.ctx();
    std::size_t rows = m.rows(), cols = m.cols();
    if (cols == 0) return std::nullopt;

    std::size_t solve_cols = cols;
    if (cols > rows + 1) solve_cols = rows + 1;

    std::vector<Elt> a(rows * solve_cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Elt* src = m.row(i);
        std::copy(src, src + solve_cols, a.begin() + static_cast<long>(i * solve_cols));
    }
    auto pivots = detail::echelonize(a, rows, solve_cols, ctx);
    auto v = detail::kernel_from_echelon(a, solve_cols, pivots, ctx);
    if (!v) return std::nullopt;

    v->resize(cols, 0);
    std::size_t first = 0;
    while (first < cols && (*v)[first] == 0) ++first;
    Elt scale = ctx.inv((*v)[first]);
    for (Elt& x : *v) x = ctx.mul(x, scale);
    return v;
}

}  // namespace cosetbound

#endif  // COSETBOUND_MODLINALG_HPP
