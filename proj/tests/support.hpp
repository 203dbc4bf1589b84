#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <pivotal/pivotal.hpp>

namespace support {

template <class T>
pivotal::compact_matrix<T> make_mat(std::initializer_list<std::initializer_list<T>> rows,
                                    pivotal::matrix_kind kind) {
    pivotal::compact_matrix<T> m;
    const std::size_t r = rows.size();
    m.entries = pivotal::matrix<T>(r, r, T(0));
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const auto& v : row) m.entries(i, j++) = v;
        ++i;
    }
    m.kind = kind;
    return m;
}

template <class T>
bool entries_equal(const pivotal::compact_matrix<T>& got,
                   std::initializer_list<std::initializer_list<T>> want) {
    std::size_t i = 0;
    for (const auto& row : want) {
        std::size_t j = 0;
        for (const auto& v : row)
            if (!(got.at(i, j++) == v)) return false;
        ++i;
    }
    return i == got.order();
}

template <class T>
double max_abs_diff(const pivotal::compact_matrix<T>& a, const pivotal::compact_matrix<T>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) {
            double d = pivotal::scalar_traits<T>::to_double(a.at(i, j)) -
                       pivotal::scalar_traits<T>::to_double(b.at(i, j));
            if (d < 0) d = -d;
            if (d > worst) worst = d;
        }
    return worst;
}

inline pivotal::csr make_csr(std::initializer_list<pivotal::csr_row> rows) {
    pivotal::csr rec;
    rec.rows = rows;
    return rec;
}

// drive the public step API: normalize, minor step, normalize, major step,
// until a verdict; returns the final matrix and record
template <class T>
struct public_run {
    pivotal::solve_status status = pivotal::solve_status::numerical_breakdown;
    pivotal::csr record;
    pivotal::compact_matrix<T> final_mat;
};

template <class T>
void apply_additions(pivotal::csr& rec, const std::vector<pivotal::csr_row>& adds) {
    if (adds.empty()) return;
    if (!rec.rows.empty() && !rec.rows.back().p_col) rec.rows.pop_back();
    for (const auto& r : adds) rec.rows.push_back(r);
}

template <class T>
public_run<T> run_public_steps(const pivotal::lp_instance<T>& inst,
                               const pivotal::solve_options<T>& opts) {
    using namespace pivotal;
    public_run<T> out;
    auto p = build_p0(inst);
    if (trivial_solution_check(p, opts.tol)) {
        out.status = solve_status::trivial_optimum;
        out.final_mat = std::move(p);
        return out;
    }
    p = normalize_last_row(p, opts.tol);
    for (int guard = 0; guard < 64; ++guard) {
        auto mi = minor_step(p, out.record, opts);
        apply_additions<T>(out.record, mi.csr_additions);
        if (mi.tag == step_tag::solved_in_branch_b) {
            out.status = solve_status::optimum;
            out.final_mat = std::move(mi.matrix);
            return out;
        }
        if (mi.tag != step_tag::advanced) {
            out.status = mi.tag == step_tag::cap_exceeded ? solve_status::iteration_limit_exceeded
                                                          : solve_status::no_solution;
            return out;
        }
        auto z = normalize_last_row(mi.matrix, opts.tol);
        auto ma = major_step(z, out.record, opts);
        apply_additions<T>(out.record, ma.csr_additions);
        if (ma.tag == step_tag::solved_in_branch_b) {
            out.status = solve_status::optimum;
            out.final_mat = std::move(ma.matrix);
            return out;
        }
        if (ma.tag != step_tag::advanced) {
            out.status = ma.tag == step_tag::cap_exceeded ? solve_status::iteration_limit_exceeded
                                                          : solve_status::no_solution;
            return out;
        }
        if (check_solution_condition(ma.matrix, opts.tol)) {
            out.status = solve_status::optimum;
            out.final_mat = std::move(ma.matrix);
            return out;
        }
        p = normalize_last_row(ma.matrix, opts.tol);
    }
    return out;
}

}  // namespace support
