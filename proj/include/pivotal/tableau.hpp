#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "instance.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

namespace pivotal {

struct numerical_breakdown : std::runtime_error {
    explicit numerical_breakdown(const std::string& what) : std::runtime_error(what) {}
};

enum class matrix_kind { p_kind, z_kind };

template <class T>
struct compact_matrix {
    matrix<T> entries;
    matrix_kind kind = matrix_kind::p_kind;
    int iteration = 0;
    int last_row_negations = 0;

    std::size_t order() const { return entries.rows(); }
    const T& at(std::size_t i, std::size_t j) const { return entries(i, j); }
    T& at(std::size_t i, std::size_t j) { return entries(i, j); }
};

// The order-(k+n+1) block matrix the iterations transform:
//   rows 1..k:      [ 0    A  |  b ]
//   rows k+1..k+n:  [ -A^T 0  | -f ]
//   last row:       [ -b^T f^T|  0 ]
template <class T>
compact_matrix<T> build_p0(const lp_instance<T>& inst) {
    inst.validate();
    const std::size_t k = inst.k, n = inst.n, m = k + n + 1;
    compact_matrix<T> p;
    p.entries = matrix<T>(m, m, T(0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            p.entries(i, k + j) = inst.A(i, j);
            p.entries(k + j, i) = -inst.A(i, j);
        }
        p.entries(i, m - 1) = inst.b[i];
        p.entries(m - 1, i) = -inst.b[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        p.entries(k + j, m - 1) = -inst.f[j];
        p.entries(m - 1, k + j) = inst.f[j];
    }
    return p;
}

template <class T>
bool trivial_solution_check(const compact_matrix<T>& p0, const tolerance<T>& tol) {
    const std::size_t m = p0.order();
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (tol.negative(p0.at(i, m - 1))) return false;
    return true;
}

// Case 1: last column nonnegative through row k+n and corner zero.
template <class T>
bool check_solution_condition(const compact_matrix<T>& mat, const tolerance<T>& tol) {
    const std::size_t m = mat.order();
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (tol.negative(mat.at(i, m - 1))) return false;
    return tol.zero(mat.at(m - 1, m - 1));
}

// Case 2: last row nonpositive through column k+n with corner positive.
template <class T>
bool check_no_solution_condition(const compact_matrix<T>& mat, const tolerance<T>& tol) {
    const std::size_t m = mat.order();
    for (std::size_t j = 0; j + 1 < m; ++j)
        if (tol.positive(mat.at(m - 1, j))) return false;
    return tol.positive(mat.at(m - 1, m - 1));
}

// P-kind: the last row and last column must oppose in sign wherever both are
// nonzero; if every testable column violates that, the last row is negated,
// and a mixed pattern is a breakdown. Z-kind: the corner is made positive.
template <class T>
compact_matrix<T> normalize_last_row(const compact_matrix<T>& mat, const tolerance<T>& tol) {
    const std::size_t m = mat.order();
    compact_matrix<T> out = mat;
    if (mat.kind == matrix_kind::z_kind) {
        const T& corner = mat.at(m - 1, m - 1);
        if (tol.zero(corner))
            throw numerical_breakdown("Z-kind corner is zero; cannot normalize");
        if (corner < T(0)) {
            for (std::size_t j = 0; j < m; ++j) out.entries(m - 1, j) = -mat.at(m - 1, j);
            ++out.last_row_negations;
        }
        return out;
    }
    if (!tol.zero(mat.at(m - 1, m - 1)))
        throw numerical_breakdown("P-kind corner drifted from zero");
    std::size_t same = 0, opposite = 0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const T& row_v = mat.at(m - 1, j);
        const T& col_v = mat.at(j, m - 1);
        if (!tol.zero(row_v) && !tol.zero(col_v)) {
            if ((row_v > T(0)) == (col_v > T(0))) ++same;
            else ++opposite;
        }
    }
    if (same && opposite)
        throw numerical_breakdown("mixed sign pattern between last row and last column");
    if (same) {
        for (std::size_t j = 0; j < m; ++j) out.entries(m - 1, j) = -mat.at(m - 1, j);
        ++out.last_row_negations;
    }
    return out;
}

}  // namespace pivotal
