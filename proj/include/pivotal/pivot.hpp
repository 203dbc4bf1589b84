#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "tableau.hpp"

namespace pivotal {

struct pivot_breakdown : std::runtime_error {
    explicit pivot_breakdown(const std::string& what) : std::runtime_error(what) {}
};

template <class T>
struct pivot_outcome {
    compact_matrix<T> matrix;
    std::size_t pivot_column = 0;
    bool used_row_addition = false;
};

// Complementary GJ+ pivot on column j: append the unit column e_j, add the
// last row to row j when the diagonal entry is zero, Gauss-Jordan pivot at
// (j,j), then swap column j with the appended column and drop it.  The swap
// collapses to overwriting column j with the transformed appended column.
template <class T>
pivot_outcome<T> gj_plus_pivot(const compact_matrix<T>& s, std::size_t j, const tolerance<T>& tol) {
    const std::size_t m = s.order();
    if (j + 1 >= m) throw std::out_of_range("pivot column must not be the last column");

    matrix<T> w(m, m + 1, T(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < m; ++c) w(i, c) = s.at(i, c);
    w(j, m) = T(1);

    pivot_outcome<T> out;
    out.pivot_column = j;
    if (tol.zero(w(j, j))) {
        for (std::size_t c = 0; c <= m; ++c) w(j, c) += w(m - 1, c);
        out.used_row_addition = true;
    }
    const T pivot = w(j, j);
    if (tol.zero(pivot))
        throw pivot_breakdown("no usable pivot in column " + std::to_string(j + 1));

    for (std::size_t i = 0; i < m; ++i) {
        if (i == j) continue;
        if (w(i, j) == T(0)) continue;
        const T factor = w(i, j) / pivot;
        for (std::size_t c = 0; c <= m; ++c) w(i, c) -= factor * w(j, c);
    }
    for (std::size_t c = 0; c <= m; ++c) w(j, c) /= pivot;

    out.matrix.entries = matrix<T>(m, m, T(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < m; ++c)
            out.matrix.entries(i, c) = (c == j) ? w(i, m) : w(i, c);
    out.matrix.kind = s.kind == matrix_kind::p_kind ? matrix_kind::z_kind : matrix_kind::p_kind;
    out.matrix.iteration = s.iteration;
    out.matrix.last_row_negations = s.last_row_negations;
    return out;
}

}  // namespace pivotal
