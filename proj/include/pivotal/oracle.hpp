#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"
#include "scalar.hpp"

namespace pivotal {

struct combinatorial_limit : std::runtime_error {
    explicit combinatorial_limit(const std::string& what) : std::runtime_error(what) {}
};

template <class T>
struct full_certificate {
    std::vector<T> z;  // (y, x, s, t) with s = b - Ax, t = A^T y - f
    T residual_eq = T(0);
    T residual_complementarity = T(0);
    T min_component = T(0);
};

template <class T>
struct certificate_report {
    T primal_feasibility = T(0);
    T dual_feasibility = T(0);
    T duality_gap = T(0);
    T complementarity = T(0);
    bool pass = false;
};

enum class oracle_status { optimal, infeasible, unbounded };

inline const char* oracle_status_name(oracle_status s) {
    switch (s) {
        case oracle_status::optimal: return "Optimal";
        case oracle_status::infeasible: return "Infeasible";
        case oracle_status::unbounded: return "Unbounded";
    }
    return "?";
}

template <class T>
struct oracle_outcome {
    oracle_status status = oracle_status::infeasible;
    std::vector<T> x;
    T objective = T(0);
    std::size_t vertices_examined = 0;
};

namespace detail {

template <class T>
T abs_value(const T& v) {
    return v < T(0) ? T(-v) : v;
}

// Square solve by elimination with partial pivoting; this path deliberately
// shares nothing with the GJ+ pivot code.
template <class T>
std::optional<std::vector<T>> solve_square(std::vector<std::vector<T>> a, std::vector<T> rhs) {
    const std::size_t r = rhs.size();
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t best = col;
        for (std::size_t i = col + 1; i < r; ++i)
            if (abs_value(a[i][col]) > abs_value(a[best][col])) best = i;
        if constexpr (std::is_same_v<T, double>) {
            if (abs_value(a[best][col]) < 1e-12) return std::nullopt;
        } else {
            if (a[best][col] == T(0)) return std::nullopt;
        }
        std::swap(a[col], a[best]);
        std::swap(rhs[col], rhs[best]);
        for (std::size_t i = col + 1; i < r; ++i) {
            if (a[i][col] == T(0)) continue;
            const T factor = a[i][col] / a[col][col];
            for (std::size_t jj = col; jj < r; ++jj) a[i][jj] -= factor * a[col][jj];
            rhs[i] -= factor * rhs[col];
        }
    }
    std::vector<T> sol(r, T(0));
    for (std::size_t i = r; i-- > 0;) {
        T acc = rhs[i];
        for (std::size_t jj = i + 1; jj < r; ++jj) acc -= a[i][jj] * sol[jj];
        sol[i] = acc / a[i][i];
    }
    return sol;
}

}  // namespace detail

template <class T>
full_certificate<T> assemble_full_z(const lp_instance<T>& inst, const std::vector<T>& x,
                                    const std::vector<T>& y) {
    if (x.size() != inst.n || y.size() != inst.k) throw std::invalid_argument("certificate dimensions disagree");
    const std::size_t k = inst.k, n = inst.n;
    full_certificate<T> cert;
    cert.z.reserve(2 * (k + n));
    std::vector<T> s(k), t(n);
    for (std::size_t i = 0; i < k; ++i) {
        T ax(0);
        for (std::size_t j = 0; j < n; ++j) ax += inst.A(i, j) * x[j];
        s[i] = inst.b[i] - ax;
    }
    for (std::size_t j = 0; j < n; ++j) {
        T aty(0);
        for (std::size_t i = 0; i < k; ++i) aty += inst.A(i, j) * y[i];
        t[j] = aty - inst.f[j];
    }
    for (const auto& v : y) cert.z.push_back(v);
    for (const auto& v : x) cert.z.push_back(v);
    for (const auto& v : s) cert.z.push_back(v);
    for (const auto& v : t) cert.z.push_back(v);

    // Equation residuals against the explicit block system: A x + s = b and
    // -A^T y + t = -f, rebuilt here by direct substitution.
    T res(0);
    for (std::size_t i = 0; i < k; ++i) {
        T row(0);
        for (std::size_t j = 0; j < n; ++j) row += inst.A(i, j) * x[j];
        row += s[i];
        row -= inst.b[i];
        res = std::max(res, detail::abs_value(row));
    }
    for (std::size_t j = 0; j < n; ++j) {
        T row(0);
        for (std::size_t i = 0; i < k; ++i) row -= inst.A(i, j) * y[i];
        row += t[j];
        row += inst.f[j];
        res = std::max(res, detail::abs_value(row));
    }
    cert.residual_eq = res;
    T comp(0);
    for (std::size_t j = 0; j < k + n; ++j)
        comp = std::max(comp, detail::abs_value(T(cert.z[j] * cert.z[k + n + j])));
    cert.residual_complementarity = comp;
    cert.min_component = cert.z.front();
    for (const auto& v : cert.z) cert.min_component = std::min(cert.min_component, v);
    return cert;
}

template <class T>
certificate_report<T> verify_certificate(const lp_instance<T>& inst, const std::vector<T>& x,
                                         const std::vector<T>& y, const T& tol) {
    auto cert = assemble_full_z(inst, x, y);
    const std::size_t k = inst.k, n = inst.n;
    certificate_report<T> rep;
    T pf(0);
    for (std::size_t i = 0; i < k; ++i) pf = std::max(pf, T(-cert.z[k + n + i]));  // Ax - b = -s
    for (std::size_t j = 0; j < n; ++j) pf = std::max(pf, T(-x[j]));
    rep.primal_feasibility = std::max(T(0), pf);
    T df(0);
    for (std::size_t j = 0; j < n; ++j) df = std::max(df, T(-cert.z[2 * k + n + j]));  // f - A^T y = -t
    for (std::size_t i = 0; i < k; ++i) df = std::max(df, T(-y[i]));
    rep.dual_feasibility = std::max(T(0), df);
    T primal(0), dual(0);
    for (std::size_t j = 0; j < n; ++j) primal += inst.f[j] * x[j];
    for (std::size_t i = 0; i < k; ++i) dual += inst.b[i] * y[i];
    rep.duality_gap = detail::abs_value(T(primal - dual));
    rep.complementarity = cert.residual_complementarity;
    rep.pass = rep.primal_feasibility <= tol && rep.dual_feasibility <= tol &&
               rep.duality_gap <= tol && rep.complementarity <= tol;
    return rep;
}

// Reference solver: enumerate candidate vertices from all n-subsets of the
// constraint rows [A; -I; I(box)], keep feasible ones, and classify.  The
// artificial box x_j <= B turns unbounded instances into box-touching optima.
template <class T>
oracle_outcome<T> brute_force_solve(const lp_instance<T>& inst, const T& box_bound = T(10000000)) {
    inst.validate();
    const std::size_t k = inst.k, n = inst.n;
    if (k + n > 24) throw combinatorial_limit("brute force oracle is limited to k+n <= 24");
    const std::size_t rows = k + 2 * n;
    const T feas_tol = std::is_same_v<T, double> ? T(1e-6) : T(0);
    const T box_tol = std::is_same_v<T, double> ? T(1e-3) : T(0);

    // a genuine ray beats every interior vertex by O(box_bound); a box-touching
    // vertex that merely ties a finite optimum differs only by rounding
    const T unbounded_margin =
        std::is_same_v<T, double> ? T(T(1e-6) * box_bound) : T(0);

    oracle_outcome<T> out;
    bool have_off = false, have_on = false;
    std::vector<T> best_off_x;
    T best_off(0), best_on(0);

    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    auto row_coeff = [&](std::size_t r, std::size_t j) -> T {
        if (r < k) return inst.A(r, j);
        if (r < k + n) return r - k == j ? T(-1) : T(0);
        return r - k - n == j ? T(1) : T(0);
    };
    auto row_rhs = [&](std::size_t r) -> T {
        if (r < k) return inst.b[r];
        if (r < k + n) return T(0);
        return box_bound;
    };
    bool more = true;
    while (more) {
        std::vector<std::vector<T>> a(n, std::vector<T>(n));
        std::vector<T> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a[i][j] = row_coeff(pick[i], j);
            rhs[i] = row_rhs(pick[i]);
        }
        ++out.vertices_examined;
        auto sol = detail::solve_square(a, rhs);
        if (sol) {
            bool feasible = true;
            for (std::size_t r = 0; r < rows && feasible; ++r) {
                T lhs(0);
                for (std::size_t j = 0; j < n; ++j) lhs += row_coeff(r, j) * (*sol)[j];
                if (lhs > row_rhs(r) + feas_tol) feasible = false;
            }
            if (feasible) {
                T obj(0);
                for (std::size_t j = 0; j < n; ++j) obj += inst.f[j] * (*sol)[j];
                bool on_box = false;
                for (std::size_t j = 0; j < n; ++j)
                    if ((*sol)[j] >= box_bound - box_tol) on_box = true;
                if (on_box) {
                    if (!have_on || obj > best_on) {
                        have_on = true;
                        best_on = obj;
                    }
                } else {
                    bool better = !have_off || obj > best_off;
                    // equal objective: keep the lexicographically smaller vertex
                    if (have_off && !(obj > best_off) && !(best_off > obj) &&
                        std::lexicographical_compare(sol->begin(), sol->end(),
                                                     best_off_x.begin(),
                                                     best_off_x.end()))
                        better = true;
                    if (better) {
                        have_off = true;
                        best_off = obj;
                        best_off_x = *sol;
                    }
                }
            }
        }
        // next n-combination of rows
        more = false;
        for (std::size_t i = n; i-- > 0;) {
            if (pick[i] + (n - i) < rows) {
                ++pick[i];
                for (std::size_t t2 = i + 1; t2 < n; ++t2) pick[t2] = pick[t2 - 1] + 1;
                more = true;
                break;
            }
        }
    }
    if (!have_off && !have_on) {
        out.status = oracle_status::infeasible;
        return out;
    }
    if (have_on && (!have_off || best_on > T(best_off + unbounded_margin))) {
        out.status = oracle_status::unbounded;
        return out;
    }
    out.status = oracle_status::optimal;
    out.x = std::move(best_off_x);
    out.objective = best_off;
    return out;
}

}  // namespace pivotal
