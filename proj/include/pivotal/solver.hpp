#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csr.hpp"
#include "instance.hpp"
#include "pivot.hpp"
#include "tableau.hpp"

namespace pivotal {

enum class minor_order { ascending_value, ascending_index };

struct ordering_rule {
    minor_order order = minor_order::ascending_value;
    bool avoid_z_repeats = true;
};

template <class T>
struct solve_options {
    ordering_rule rule;
    tolerance<T> tol = scalar_traits<T>::default_tolerance();
    double iteration_cap_factor = 2.0;
    bool trace_enabled = false;
};

enum class solve_status {
    trivial_optimum,
    optimum,
    no_solution,
    iteration_limit_exceeded,
    numerical_breakdown,
};

enum class terminal_rule {
    none,
    trivial,
    case1,
    case1_minor_b,
    case1_major_b,
    case2,
    exhausted_minor_b,
    exhausted_major_b,
    iteration_cap,
    breakdown,
};

enum class candidate_kind { minor_l, major_lhat };

template <class T>
struct candidate_set {
    candidate_kind kind = candidate_kind::minor_l;
    std::vector<std::pair<int, T>> members;  // 1-based column, last-row value
};

enum class step_branch { a, b, c, none };

template <class T>
struct trace_step {
    std::string stage;
    compact_matrix<T> snapshot;
    candidate_set<T> candidates;
    std::optional<int> chosen;  // 1-based
    bool negated = false;
    step_branch branch = step_branch::none;
};

enum class step_tag { advanced, solved_in_branch_b, no_solution, cap_exceeded };

// csr_additions replace the open final row of the input record when one
// exists, and are appended otherwise.
template <class T>
struct step_outcome {
    step_tag tag = step_tag::no_solution;
    compact_matrix<T> matrix;
    std::optional<int> chosen;  // 1-based
    std::vector<csr_row> csr_additions;
    candidate_set<T> candidates;
};

template <class T>
struct solve_report {
    solve_status status = solve_status::numerical_breakdown;
    std::vector<T> x;
    std::vector<T> y;
    std::optional<T> primal_objective;
    std::optional<T> dual_objective;
    int iterations = 0;
    csr record;
    int negations = 0;
    terminal_rule terminal = terminal_rule::none;
    std::vector<std::pair<int, candidate_kind>> branch_b_iterations;
    std::string message;
    std::vector<trace_step<T>> trace;
};

inline const char* status_name(solve_status s) {
    switch (s) {
        case solve_status::trivial_optimum: return "TrivialOptimum";
        case solve_status::optimum: return "Optimum";
        case solve_status::no_solution: return "NoSolution";
        case solve_status::iteration_limit_exceeded: return "IterationLimitExceeded";
        case solve_status::numerical_breakdown: return "NumericalBreakdown";
    }
    return "?";
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> extract_solution(const compact_matrix<T>& p, const csr& record,
                                                           std::size_t k, std::size_t n) {
    const std::size_t m = k + n + 1;
    auto counts = record.counts();
    std::vector<T> x(n, T(0)), y(k, T(0));
    for (std::size_t j = 0; j + 1 < m; ++j) {
        auto it = counts.find(static_cast<int>(j) + 1);
        if (it == counts.end() || it->second % 2 == 0) continue;
        if (j < k) y[j] = p.at(j, m - 1);
        else x[j - k] = p.at(j, m - 1);
    }
    return {std::move(x), std::move(y)};
}

namespace detail {

// The iteration engine.  Branch (b) of either step is a depth-first search:
// each candidate is pivoted and the run continues from that state; the first
// continuation that reaches the solution condition is accepted, dead ends
// backtrack, and exhausting every candidate is the no-solution verdict.
// Work is bounded by the iteration cap per path plus a global pivot budget.
template <class T>
class engine {
public:
    enum class fate { solved, dead, capped };
    enum class dead_kind { plain, case2, exhausted_minor, exhausted_major };

    struct row0 {
        int z = -1;
        std::optional<int> p;
    };

    struct outcome {
        fate f = fate::dead;
        compact_matrix<T> mat;
        std::vector<row0> path;
        terminal_rule rule = terminal_rule::none;
        std::vector<std::pair<int, candidate_kind>> branch_b;
        dead_kind dk = dead_kind::plain;
        std::vector<row0> dead_path;
        int dead_negations = 0;
    };

    engine(std::size_t m, const solve_options<T>& opts)
        : m_(m), opts_(opts) {
        const auto span = static_cast<double>(m - 1);
        cap_ = static_cast<int>(std::ceil(opts.iteration_cap_factor * span));
        if (cap_ < static_cast<int>(m - 1)) cap_ = static_cast<int>(m - 1);
        budget_ = 4LL * cap_ * static_cast<long long>(m + 1);
    }

    int cap() const { return cap_; }
    std::vector<trace_step<T>>& trace() { return trace_; }
    int error_iteration = 0;

    static csr to_public(const std::vector<row0>& path) {
        csr rec;
        for (std::size_t i = 0; i < path.size(); ++i) {
            csr_row r;
            r.iteration = static_cast<int>(i) + 1;
            r.z_col = path[i].z + 1;
            if (path[i].p) r.p_col = *path[i].p + 1;
            rec.rows.push_back(r);
        }
        return rec;
    }

    std::vector<int> minor_ordered(const compact_matrix<T>& p, const std::vector<row0>& path) const {
        std::vector<int> l;
        for (std::size_t j = 0; j + 1 < m_; ++j)
            if (opts_.tol.positive(p.at(m_ - 1, j))) l.push_back(static_cast<int>(j));
        if (opts_.rule.order == minor_order::ascending_value) {
            std::stable_sort(l.begin(), l.end(), [&](int a, int b) {
                const T& va = p.at(m_ - 1, a);
                const T& vb = p.at(m_ - 1, b);
                if (va != vb) return va < vb;
                return a < b;
            });
        } else {
            // Ascending index, scanned cyclically from just past the previous
            // Z selection; plain ascending on the first iteration.
            const int width = static_cast<int>(m_) - 1;
            const int start = path.empty() ? 0 : (path.back().z + 1) % width;
            std::stable_sort(l.begin(), l.end(), [&](int a, int b) {
                const int ka = (a - start + width) % width;
                const int kb = (b - start + width) % width;
                if (ka != kb) return ka < kb;
                return a < b;
            });
        }
        return l;
    }

    std::vector<int> major_ordered(const compact_matrix<T>& z) const {
        std::vector<int> l;
        for (std::size_t j = 0; j + 1 < m_; ++j)
            if (opts_.tol.positive(z.at(m_ - 1, j))) l.push_back(static_cast<int>(j));
        std::stable_sort(l.begin(), l.end(), [&](int a, int b) {
            const T& va = z.at(m_ - 1, a);
            const T& vb = z.at(m_ - 1, b);
            if (va != vb) return vb < va;
            return a < b;
        });
        return l;
    }

    candidate_set<T> to_candidates(const std::vector<int>& l, const compact_matrix<T>& mat,
                                   candidate_kind kind) const {
        candidate_set<T> out;
        out.kind = kind;
        for (int j : l) out.members.emplace_back(j + 1, mat.at(m_ - 1, j));
        return out;
    }

    outcome from_p(compact_matrix<T> p, std::vector<row0> path, int depth) {
        if (static_cast<int>(path.size()) >= cap_) return outcome{fate::capped};
        const int before = p.last_row_negations;
        try {
            p = normalize_last_row(p, opts_.tol);
        } catch (const numerical_breakdown&) {
            if (depth) return outcome{fate::dead};
            error_iteration = static_cast<int>(path.size());
            throw;
        }
        auto l = minor_ordered(p, path);
        const std::size_t tpos = trace_mark();
        if (opts_.trace_enabled) {
            trace_step<T> st;
            st.stage = "P(" + std::to_string(path.size()) + ")";
            st.snapshot = p;
            st.candidates = to_candidates(l, p, candidate_kind::minor_l);
            st.negated = p.last_row_negations > before;
            trace_.push_back(std::move(st));
        }
        if (l.empty()) {
            if (depth) return outcome{fate::dead};
            error_iteration = static_cast<int>(path.size()) + 1;
            throw numerical_breakdown("empty minor candidate set on an unsolved P-kind matrix");
        }
        std::set<int> pc, zc;
        for (const auto& r : path) {
            zc.insert(r.z);
            if (r.p) pc.insert(*r.p);
        }
        std::vector<int> eligible;
        for (int j : l)
            if (!pc.count(j)) eligible.push_back(j);
        if (!eligible.empty()) {
            int jz = eligible.front();
            if (opts_.rule.avoid_z_repeats) {
                for (int j : eligible)
                    if (!zc.count(j)) { jz = j; break; }
            }
            if (!spend()) return outcome{fate::capped};
            compact_matrix<T> z;
            try {
                auto po = gj_plus_pivot(p, static_cast<std::size_t>(jz), opts_.tol);
                z = std::move(po.matrix);
            } catch (const pivot_breakdown&) {
                if (depth) return outcome{fate::dead};
                error_iteration = static_cast<int>(path.size()) + 1;
                throw;
            }
            z.iteration = static_cast<int>(path.size()) + 1;
            set_trace_choice(tpos, jz, step_branch::a);
            path.push_back(row0{jz, std::nullopt});
            return from_z(std::move(z), std::move(path), depth);
        }
        set_trace_choice(tpos, std::nullopt, step_branch::b);
        bool capped = false;
        for (int j : l) {
            if (!spend()) return outcome{fate::capped};
            const std::size_t mark = trace_mark();
            compact_matrix<T> zc_mat;
            try {
                auto po = gj_plus_pivot(p, static_cast<std::size_t>(j), opts_.tol);
                zc_mat = std::move(po.matrix);
            } catch (const pivot_breakdown&) {
                continue;
            }
            zc_mat.iteration = static_cast<int>(path.size()) + 1;
            auto path2 = path;
            path2.push_back(row0{j, std::nullopt});
            if (check_solution_condition(zc_mat, opts_.tol)) {
                auto out = make_solved(std::move(zc_mat), std::move(path2), terminal_rule::case1_minor_b);
                out.branch_b.emplace_back(static_cast<int>(path.size()) + 1, candidate_kind::minor_l);
                return out;
            }
            auto sub = from_z(std::move(zc_mat), std::move(path2), depth + 1);
            if (sub.f == fate::solved) {
                sub.branch_b.emplace_back(static_cast<int>(path.size()) + 1, candidate_kind::minor_l);
                return sub;
            }
            if (sub.f == fate::capped) capped = true;
            trace_rollback(mark);
        }
        if (capped) return outcome{fate::capped};
        outcome out{fate::dead};
        if (depth == 0) {
            out.dk = dead_kind::exhausted_minor;
            out.dead_path = std::move(path);
            out.dead_negations = p.last_row_negations;
        }
        return out;
    }

    outcome from_z(compact_matrix<T> z, std::vector<row0> path, int depth) {
        const int before = z.last_row_negations;
        try {
            z = normalize_last_row(z, opts_.tol);
        } catch (const numerical_breakdown&) {
            if (depth) return outcome{fate::dead};
            error_iteration = static_cast<int>(path.size());
            throw;
        }
        auto l = major_ordered(z);
        const std::size_t tpos = trace_mark();
        if (opts_.trace_enabled) {
            trace_step<T> st;
            st.stage = "Z(" + std::to_string(path.size()) + ")";
            st.snapshot = z;
            st.candidates = to_candidates(l, z, candidate_kind::major_lhat);
            st.negated = z.last_row_negations > before;
            trace_.push_back(std::move(st));
        }
        if (check_no_solution_condition(z, opts_.tol) || l.empty()) {
            set_trace_choice(tpos, std::nullopt, step_branch::c);
            outcome out{fate::dead};
            out.dk = dead_kind::case2;
            out.dead_path = std::move(path);
            out.dead_negations = z.last_row_negations;
            return out;
        }
        std::set<int> pc;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (path[i].p) pc.insert(*path[i].p);
        std::vector<int> eligible;
        for (int j : l)
            if (!pc.count(j)) eligible.push_back(j);
        if (!eligible.empty()) {
            const int jp = eligible.front();
            if (!spend()) return outcome{fate::capped};
            compact_matrix<T> p2;
            try {
                auto po = gj_plus_pivot(z, static_cast<std::size_t>(jp), opts_.tol);
                p2 = std::move(po.matrix);
            } catch (const pivot_breakdown&) {
                if (depth) return outcome{fate::dead};
                error_iteration = static_cast<int>(path.size());
                throw;
            }
            p2.iteration = static_cast<int>(path.size());
            set_trace_choice(tpos, jp, step_branch::a);
            path.back().p = jp;
            if (check_solution_condition(p2, opts_.tol))
                return make_solved(std::move(p2), std::move(path), terminal_rule::case1);
            return from_p(std::move(p2), std::move(path), depth);
        }
        set_trace_choice(tpos, std::nullopt, step_branch::b);
        bool capped = false;
        for (int j : l) {
            if (!spend()) return outcome{fate::capped};
            const std::size_t mark = trace_mark();
            compact_matrix<T> pc_mat;
            try {
                auto po = gj_plus_pivot(z, static_cast<std::size_t>(j), opts_.tol);
                pc_mat = std::move(po.matrix);
            } catch (const pivot_breakdown&) {
                continue;
            }
            pc_mat.iteration = static_cast<int>(path.size());
            auto path2 = path;
            path2.back().p = j;
            if (check_solution_condition(pc_mat, opts_.tol)) {
                auto out = make_solved(std::move(pc_mat), std::move(path2), terminal_rule::case1_major_b);
                out.branch_b.emplace_back(static_cast<int>(path.size()), candidate_kind::major_lhat);
                return out;
            }
            auto sub = from_p(std::move(pc_mat), std::move(path2), depth + 1);
            if (sub.f == fate::solved) {
                sub.branch_b.emplace_back(static_cast<int>(path.size()), candidate_kind::major_lhat);
                return sub;
            }
            if (sub.f == fate::capped) capped = true;
            trace_rollback(mark);
        }
        if (capped) return outcome{fate::capped};
        outcome out{fate::dead};
        if (depth == 0) {
            out.dk = dead_kind::exhausted_major;
            out.dead_path = std::move(path);
            out.dead_negations = z.last_row_negations;
        }
        return out;
    }

private:
    outcome make_solved(compact_matrix<T> mat, std::vector<row0> path, terminal_rule rule) {
        if (opts_.trace_enabled) {
            trace_step<T> st;
            st.stage = (mat.kind == matrix_kind::p_kind ? "P(" : "Z(") + std::to_string(path.size()) + ")";
            st.snapshot = mat;
            trace_.push_back(std::move(st));
        }
        outcome out{fate::solved};
        out.mat = std::move(mat);
        out.path = std::move(path);
        out.rule = rule;
        return out;
    }

    bool spend() { return --budget_ >= 0; }
    std::size_t trace_mark() const { return trace_.size(); }
    void trace_rollback(std::size_t mark) {
        if (opts_.trace_enabled && trace_.size() > mark) trace_.resize(mark);
    }
    void set_trace_choice(std::size_t pos, std::optional<int> chosen, step_branch br) {
        if (!opts_.trace_enabled || pos >= trace_.size()) return;
        trace_[pos].chosen = chosen ? std::optional<int>(*chosen + 1) : std::nullopt;
        trace_[pos].branch = br;
    }

    std::size_t m_;
    solve_options<T> opts_;
    int cap_ = 0;
    long long budget_ = 0;
    std::vector<trace_step<T>> trace_;
};

template <class T>
std::vector<typename engine<T>::row0> to_internal(const csr& record) {
    std::vector<typename engine<T>::row0> path;
    for (const auto& r : record.rows) {
        typename engine<T>::row0 row;
        row.z = r.z_col - 1;
        if (r.p_col) row.p = *r.p_col - 1;
        path.push_back(row);
    }
    return path;
}

}  // namespace detail

template <class T>
step_outcome<T> minor_step(const compact_matrix<T>& p_prev, const csr& record, const solve_options<T>& opts) {
    detail::engine<T> eng(p_prev.order(), opts);
    auto path = detail::to_internal<T>(record);
    auto l = eng.minor_ordered(p_prev, path);
    step_outcome<T> out;
    out.candidates = eng.to_candidates(l, p_prev, candidate_kind::minor_l);
    if (l.empty()) throw numerical_breakdown("empty minor candidate set on an unsolved P-kind matrix");
    std::set<int> pc, zc;
    for (const auto& r : path) {
        zc.insert(r.z);
        if (r.p) pc.insert(*r.p);
    }
    std::vector<int> eligible;
    for (int j : l)
        if (!pc.count(j)) eligible.push_back(j);
    const int iter = static_cast<int>(path.size()) + 1;
    if (!eligible.empty()) {
        int jz = eligible.front();
        if (opts.rule.avoid_z_repeats) {
            for (int j : eligible)
                if (!zc.count(j)) { jz = j; break; }
        }
        auto po = gj_plus_pivot(p_prev, static_cast<std::size_t>(jz), opts.tol);
        out.tag = step_tag::advanced;
        out.matrix = std::move(po.matrix);
        out.matrix.iteration = iter;
        out.chosen = jz + 1;
        out.csr_additions = {csr_row{iter, jz + 1, std::nullopt}};
        return out;
    }
    bool capped = false;
    for (int j : l) {
        compact_matrix<T> zc_mat;
        try {
            auto po = gj_plus_pivot(p_prev, static_cast<std::size_t>(j), opts.tol);
            zc_mat = std::move(po.matrix);
        } catch (const pivot_breakdown&) {
            continue;
        }
        zc_mat.iteration = iter;
        auto path2 = path;
        path2.push_back({j, std::nullopt});
        if (check_solution_condition(zc_mat, opts.tol)) {
            out.tag = step_tag::solved_in_branch_b;
            out.matrix = std::move(zc_mat);
            out.chosen = j + 1;
            out.csr_additions = {csr_row{iter, j + 1, std::nullopt}};
            return out;
        }
        auto sub = eng.from_z(std::move(zc_mat), std::move(path2), 1);
        if (sub.f == detail::engine<T>::fate::solved) {
            out.tag = step_tag::solved_in_branch_b;
            out.matrix = std::move(sub.mat);
            out.chosen = j + 1;
            auto rec = detail::engine<T>::to_public(sub.path);
            out.csr_additions.assign(rec.rows.begin() + path.size(), rec.rows.end());
            return out;
        }
        if (sub.f == detail::engine<T>::fate::capped) capped = true;
    }
    out.tag = capped ? step_tag::cap_exceeded : step_tag::no_solution;
    return out;
}

template <class T>
step_outcome<T> major_step(const compact_matrix<T>& z, const csr& record, const solve_options<T>& opts) {
    detail::engine<T> eng(z.order(), opts);
    auto path = detail::to_internal<T>(record);
    if (path.empty() || path.back().p)
        throw std::invalid_argument("major_step expects a record whose final row awaits its P entry");
    auto l = eng.major_ordered(z);
    step_outcome<T> out;
    out.candidates = eng.to_candidates(l, z, candidate_kind::major_lhat);
    if (l.empty()) {
        out.tag = step_tag::no_solution;
        return out;
    }
    std::set<int> pc;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (path[i].p) pc.insert(*path[i].p);
    std::vector<int> eligible;
    for (int j : l)
        if (!pc.count(j)) eligible.push_back(j);
    const int iter = static_cast<int>(path.size());
    if (!eligible.empty()) {
        const int jp = eligible.front();
        auto po = gj_plus_pivot(z, static_cast<std::size_t>(jp), opts.tol);
        out.tag = step_tag::advanced;
        out.matrix = std::move(po.matrix);
        out.matrix.iteration = iter;
        out.chosen = jp + 1;
        out.csr_additions = {csr_row{iter, path.back().z + 1, jp + 1}};
        return out;
    }
    bool capped = false;
    for (int j : l) {
        compact_matrix<T> p_mat;
        try {
            auto po = gj_plus_pivot(z, static_cast<std::size_t>(j), opts.tol);
            p_mat = std::move(po.matrix);
        } catch (const pivot_breakdown&) {
            continue;
        }
        p_mat.iteration = iter;
        auto path2 = path;
        path2.back().p = j;
        if (check_solution_condition(p_mat, opts.tol)) {
            out.tag = step_tag::solved_in_branch_b;
            out.matrix = std::move(p_mat);
            out.chosen = j + 1;
            out.csr_additions = {csr_row{iter, path.back().z + 1, j + 1}};
            return out;
        }
        auto sub = eng.from_p(std::move(p_mat), std::move(path2), 1);
        if (sub.f == detail::engine<T>::fate::solved) {
            out.tag = step_tag::solved_in_branch_b;
            out.matrix = std::move(sub.mat);
            out.chosen = j + 1;
            auto rec = detail::engine<T>::to_public(sub.path);
            out.csr_additions.assign(rec.rows.begin() + (path.size() - 1), rec.rows.end());
            return out;
        }
        if (sub.f == detail::engine<T>::fate::capped) capped = true;
    }
    out.tag = capped ? step_tag::cap_exceeded : step_tag::no_solution;
    return out;
}

template <class T>
solve_report<T> solve(const lp_instance<T>& inst, const solve_options<T>& opts = {}) {
    inst.validate();
    solve_report<T> rep;
    auto p0 = build_p0(inst);
    detail::engine<T> eng(p0.order(), opts);
    if (trivial_solution_check(p0, opts.tol)) {
        rep.status = solve_status::trivial_optimum;
        rep.terminal = terminal_rule::trivial;
        rep.x.assign(inst.n, T(0));
        rep.y.assign(inst.k, T(0));
        rep.primal_objective = T(0);
        rep.dual_objective = T(0);
        if (opts.trace_enabled) {
            trace_step<T> st;
            st.stage = "P(0)";
            st.snapshot = p0;
            rep.trace.push_back(std::move(st));
        }
        return rep;
    }
    typename detail::engine<T>::outcome result;
    try {
        result = eng.from_p(std::move(p0), {}, 0);
    } catch (const numerical_breakdown& e) {
        rep.status = solve_status::numerical_breakdown;
        rep.terminal = terminal_rule::breakdown;
        rep.iterations = eng.error_iteration;
        rep.message = e.what();
        rep.trace = std::move(eng.trace());
        return rep;
    } catch (const pivot_breakdown& e) {
        rep.status = solve_status::numerical_breakdown;
        rep.terminal = terminal_rule::breakdown;
        rep.iterations = eng.error_iteration;
        rep.message = e.what();
        rep.trace = std::move(eng.trace());
        return rep;
    }
    using fate = typename detail::engine<T>::fate;
    using dead_kind = typename detail::engine<T>::dead_kind;
    rep.trace = std::move(eng.trace());
    if (result.f == fate::solved) {
        rep.status = solve_status::optimum;
        rep.terminal = result.rule;
        rep.record = detail::engine<T>::to_public(result.path);
        rep.iterations = static_cast<int>(result.path.size());
        rep.negations = result.mat.last_row_negations;
        std::reverse(result.branch_b.begin(), result.branch_b.end());
        rep.branch_b_iterations = std::move(result.branch_b);
        auto xy = extract_solution(result.mat, rep.record, inst.k, inst.n);
        rep.x = std::move(xy.first);
        rep.y = std::move(xy.second);
        T primal(0), dual(0);
        for (std::size_t j = 0; j < inst.n; ++j) primal += inst.f[j] * rep.x[j];
        for (std::size_t i = 0; i < inst.k; ++i) dual += inst.b[i] * rep.y[i];
        rep.primal_objective = primal;
        rep.dual_objective = dual;
        return rep;
    }
    if (result.f == fate::capped) {
        rep.status = solve_status::iteration_limit_exceeded;
        rep.terminal = terminal_rule::iteration_cap;
        rep.iterations = eng.cap();
        rep.message = "iteration cap reached without a verdict";
        return rep;
    }
    rep.status = solve_status::no_solution;
    rep.negations = result.dead_negations;
    rep.record = detail::engine<T>::to_public(result.dead_path);
    if (result.dk == dead_kind::exhausted_minor) {
        rep.terminal = terminal_rule::exhausted_minor_b;
        rep.iterations = static_cast<int>(result.dead_path.size()) + 1;
    } else {
        rep.terminal = result.dk == dead_kind::case2 ? terminal_rule::case2 : terminal_rule::exhausted_major_b;
        rep.iterations = static_cast<int>(result.dead_path.size());
    }
    return rep;
}

}  // namespace pivotal
