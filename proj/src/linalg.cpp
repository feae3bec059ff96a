#include "fdo/linalg.hpp"

#include <gmpxx.h>

#include <algorithm>

namespace fdo {

namespace {

using ZRow = std::vector<mpz_class>;

// Clear denominators rowwise; row scaling changes neither kernel nor rank.
std::vector<ZRow> to_integer_rows(const QMatrix& m, int cols) {
    std::vector<ZRow> rows;
    rows.reserve(m.size());
    for (const auto& r : m) {
        mpz_class l = 1;
        for (int j = 0; j < cols; ++j) {
            if (j < static_cast<int>(r.size()))
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r[j].den().get_mpz_t());
        }
        ZRow z(cols, 0);
        for (int j = 0; j < cols && j < static_cast<int>(r.size()); ++j) {
            mpq_class v = r[j].value() * mpq_class(l);
            z[j] = v.get_num();
        }
        rows.push_back(std::move(z));
    }
    return rows;
}

struct RefResult {
    std::vector<ZRow> rows;       // echelon rows, one per pivot
    std::vector<int> pivot_cols;  // ascending
};

// Bareiss fraction-free row echelon form. Intermediate entries stay integral
// and of bounded size (minors of the input).
RefResult bareiss_ref(std::vector<ZRow> rows, int cols) {
    RefResult out;
    mpz_class prev = 1;
    size_t next = 0;
    for (int col = 0; col < cols && next < rows.size(); ++col) {
        size_t piv = next;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[next], rows[piv]);
        const mpz_class p = rows[next][col];
        for (size_t i = next + 1; i < rows.size(); ++i) {
            const mpz_class q = rows[i][col];
            for (int j = col; j < cols; ++j) {
                mpz_class t = p * rows[i][j] - q * rows[next][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                rows[i][j] = t;
            }
        }
        out.pivot_cols.push_back(col);
        out.rows.push_back(rows[next]);
        prev = p;
        ++next;
    }
    return out;
}

// Back-substitute over Q: given echelon rows and values for the free
// columns, fill in the pivot columns.
QVector back_substitute(const RefResult& ref, int cols, const QVector& free_vals,
                        const std::vector<int>& free_cols) {
    QVector x(cols, Scalar(0));
    for (size_t k = 0; k < free_cols.size(); ++k) x[free_cols[k]] = free_vals[k];
    for (int r = static_cast<int>(ref.rows.size()) - 1; r >= 0; --r) {
        int pc = ref.pivot_cols[r];
        Scalar acc(0);
        for (int j = pc + 1; j < cols; ++j) {
            if (ref.rows[r][j] != 0) acc += Scalar(mpz_class(ref.rows[r][j])) * x[j];
        }
        x[pc] = -acc / Scalar(mpz_class(ref.rows[r][pc]));
    }
    return x;
}

} // namespace

std::vector<QVector> kernel_basis(const QMatrix& m, int cols) {
    auto ref = bareiss_ref(to_integer_rows(m, cols), cols);
    std::vector<int> free_cols;
    {
        size_t k = 0;
        for (int j = 0; j < cols; ++j) {
            if (k < ref.pivot_cols.size() && ref.pivot_cols[k] == j)
                ++k;
            else
                free_cols.push_back(j);
        }
    }
    std::vector<QVector> basis;
    basis.reserve(free_cols.size());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        QVector free_vals(free_cols.size(), Scalar(0));
        free_vals[k] = Scalar(1);
        basis.push_back(back_substitute(ref, cols, free_vals, free_cols));
    }
    return basis;
}

int matrix_rank(const QMatrix& m, int cols) {
    return static_cast<int>(bareiss_ref(to_integer_rows(m, cols), cols).rows.size());
}

std::optional<QVector> solve_linear(const QMatrix& a, const QVector& b) {
    const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
    QMatrix aug(a);
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto ref = bareiss_ref(to_integer_rows(aug, cols + 1), cols + 1);
    // Inconsistent iff some pivot lands in the appended column.
    for (int pc : ref.pivot_cols)
        if (pc == cols) return std::nullopt;
    std::vector<int> free_cols;
    {
        size_t k = 0;
        for (int j = 0; j < cols; ++j) {
            if (k < ref.pivot_cols.size() && ref.pivot_cols[k] == j)
                ++k;
            else
                free_cols.push_back(j);
        }
    }
    // The appended column plays the role of a free variable pinned to -1,
    // so the kernel vector (x, -1) satisfies A x - b = 0.
    free_cols.push_back(cols);
    QVector free_vals(free_cols.size(), Scalar(0));
    free_vals.back() = Scalar(-1);
    QVector x = back_substitute(ref, cols + 1, free_vals, free_cols);
    x.resize(cols);
    return x;
}

} // namespace fdo
