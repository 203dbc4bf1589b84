#pragma once

#include <cctype>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"
#include "oracle.hpp"
#include "solver.hpp"

namespace pivotal {

struct parse_error : std::runtime_error {
    int line;
    int column;
    parse_error(int line_, int column_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
};

namespace detail {

struct token {
    std::string text;
    int line;
    int column;
};

// One vector of tokens per nonempty, non-comment line.
inline std::vector<std::vector<token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<token>> lines;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        ++lineno;
        std::string line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::vector<token> toks;
        std::size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            toks.push_back({line.substr(start, i - start), lineno, static_cast<int>(start) + 1});
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return lines;
}

template <class T>
T parse_value(const token& tok) {
    try {
        return parse_scalar<T>(tok.text);
    } catch (const std::exception&) {
        throw parse_error(tok.line, tok.column, "malformed number '" + tok.text + "'");
    }
}

}  // namespace detail

// Format: optional `#` comments and blank lines; a `k n` line; one line of n
// values for f; k lines of n values for rows of A; one line of k values for
// b.  Values are decimal literals or rationals `p/q`.
template <class T>
lp_instance<T> parse_instance(const std::string& text) {
    auto lines = detail::tokenize_lines(text);
    std::size_t li = 0;
    auto need_line = [&](const char* what) -> const std::vector<detail::token>& {
        if (li >= lines.size()) throw parse_error(lines.empty() ? 1 : lines.back().front().line, 1,
                                                  std::string("missing ") + what);
        return lines[li++];
    };
    const auto& head = need_line("header line 'k n'");
    if (head.size() != 2)
        throw parse_error(head.front().line, head.front().column, "header line must hold exactly 'k n'");
    long long k = 0, n = 0;
    try {
        std::size_t used = 0;
        k = std::stoll(head[0].text, &used);
        if (used != head[0].text.size()) throw std::invalid_argument(head[0].text);
        n = std::stoll(head[1].text, &used);
        if (used != head[1].text.size()) throw std::invalid_argument(head[1].text);
    } catch (const std::exception&) {
        throw parse_error(head.front().line, head.front().column, "malformed dimension");
    }
    if (k < 1 || n < 1) throw parse_error(head.front().line, head.front().column, "k and n must be at least 1");

    lp_instance<T> inst;
    inst.k = static_cast<std::size_t>(k);
    inst.n = static_cast<std::size_t>(n);
    auto read_row = [&](std::size_t count, const char* what) {
        const auto& row = need_line(what);
        if (row.size() != count)
            throw parse_error(row.front().line, row.front().column,
                              std::string(what) + " must hold exactly " + std::to_string(count) + " values");
        std::vector<T> vals;
        vals.reserve(count);
        for (const auto& tok : row) vals.push_back(detail::parse_value<T>(tok));
        return vals;
    };
    inst.f = read_row(inst.n, "objective line (f)");
    inst.A = matrix<T>(inst.k, inst.n);
    for (std::size_t i = 0; i < inst.k; ++i) {
        auto row = read_row(inst.n, ("A row " + std::to_string(i + 1)).c_str());
        for (std::size_t j = 0; j < inst.n; ++j) inst.A(i, j) = row[j];
    }
    inst.b = read_row(inst.k, "right-hand side line (b)");
    if (li < lines.size())
        throw parse_error(lines[li].front().line, lines[li].front().column, "unexpected trailing content");
    return inst;
}

template <class T>
std::string serialize_instance(const lp_instance<T>& inst) {
    std::ostringstream out;
    out << inst.k << ' ' << inst.n << '\n';
    for (std::size_t j = 0; j < inst.n; ++j) out << (j ? " " : "") << scalar_traits<T>::str(inst.f[j]);
    out << '\n';
    for (std::size_t i = 0; i < inst.k; ++i) {
        for (std::size_t j = 0; j < inst.n; ++j) out << (j ? " " : "") << scalar_traits<T>::str(inst.A(i, j));
        out << '\n';
    }
    for (std::size_t i = 0; i < inst.k; ++i) out << (i ? " " : "") << scalar_traits<T>::str(inst.b[i]);
    out << '\n';
    return out.str();
}

enum class report_format { text, json };

namespace detail {

template <class T>
void json_vector(std::ostringstream& out, const std::vector<T>& v) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << scalar_traits<T>::json(v[i]);
    out << ']';
}

}  // namespace detail

template <class T>
std::string serialize_report(const solve_report<T>& rep, report_format format) {
    const bool solved = rep.status == solve_status::optimum || rep.status == solve_status::trivial_optimum;
    if (format == report_format::json) {
        std::ostringstream out;
        out << "{\"status\":\"" << status_name(rep.status) << "\"";
        out << ",\"iterations\":" << rep.iterations;
        out << ",\"x\":";
        if (solved) detail::json_vector(out, rep.x);
        else out << "null";
        out << ",\"y\":";
        if (solved) detail::json_vector(out, rep.y);
        else out << "null";
        out << ",\"primal_objective\":";
        if (rep.primal_objective) out << scalar_traits<T>::json(*rep.primal_objective);
        else out << "null";
        out << ",\"dual_objective\":";
        if (rep.dual_objective) out << scalar_traits<T>::json(*rep.dual_objective);
        else out << "null";
        out << ",\"csr\":[";
        for (std::size_t i = 0; i < rep.record.rows.size(); ++i) {
            const auto& r = rep.record.rows[i];
            out << (i ? "," : "") << "{\"iter\":" << r.iteration << ",\"z\":" << r.z_col << ",\"p\":";
            if (r.p_col) out << *r.p_col;
            else out << "null";
            out << "}";
        }
        out << "]";
        out << ",\"negations\":" << rep.negations;
        if (!rep.message.empty()) {
            out << ",\"message\":\"";
            for (char c : rep.message) {
                if (c == '"' || c == '\\') out << '\\';
                out << c;
            }
            out << "\"";
        }
        if (!rep.trace.empty()) {
            out << ",\"trace\":[";
            for (std::size_t s = 0; s < rep.trace.size(); ++s) {
                const auto& st = rep.trace[s];
                out << (s ? "," : "") << "{\"stage\":\"" << st.stage << "\"";
                out << ",\"negated\":" << (st.negated ? "true" : "false");
                out << ",\"branch\":";
                switch (st.branch) {
                    case step_branch::a: out << "\"a\""; break;
                    case step_branch::b: out << "\"b\""; break;
                    case step_branch::c: out << "\"c\""; break;
                    case step_branch::none: out << "null"; break;
                }
                out << ",\"chosen\":";
                if (st.chosen) out << *st.chosen;
                else out << "null";
                out << ",\"candidates\":[";
                for (std::size_t c = 0; c < st.candidates.members.size(); ++c) {
                    const auto& [j, v] = st.candidates.members[c];
                    out << (c ? "," : "") << "[" << j << "," << scalar_traits<T>::json(v) << "]";
                }
                out << "],\"matrix\":[";
                const auto& m = st.snapshot.entries;
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    out << (i ? "," : "") << "[";
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        out << (j ? "," : "") << scalar_traits<T>::json(m(i, j));
                    out << "]";
                }
                out << "]}";
            }
            out << "]";
        }
        out << "}";
        return out.str();
    }
    std::ostringstream out;
    out << "status: " << status_name(rep.status) << '\n';
    out << "iterations: " << rep.iterations << '\n';
    if (!rep.record.rows.empty()) {
        out << "CSR:\n";
        out << "  iter   Z   P\n";
        for (const auto& r : rep.record.rows) {
            out << "  " << r.iteration << "      " << r.z_col << "   ";
            if (r.p_col) out << *r.p_col;
            else out << "na";
            out << '\n';
        }
    }
    if (solved) {
        out << "primal x:";
        for (const auto& v : rep.x) out << ' ' << scalar_traits<T>::str(v);
        out << '\n';
        out << "dual y:";
        for (const auto& v : rep.y) out << ' ' << scalar_traits<T>::str(v);
        out << '\n';
        out << "primal objective: " << scalar_traits<T>::str(*rep.primal_objective) << '\n';
        out << "dual objective: " << scalar_traits<T>::str(*rep.dual_objective) << '\n';
    }
    if (!rep.message.empty()) out << "note: " << rep.message << '\n';
    return out.str();
}

template <class T>
std::string serialize_trace(const std::vector<trace_step<T>>& trace) {
    if (trace.empty()) throw std::invalid_argument("empty trace");
    std::ostringstream out;
    for (const auto& st : trace) {
        out << "== " << st.stage;
        if (st.negated) out << " (last row negated)";
        out << " ==\n";
        const auto& m = st.snapshot.entries;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                out << (j ? "\t" : "") << scalar_traits<T>::str_fixed(m(i, j));
            out << '\n';
        }
        if (!st.candidates.members.empty()) {
            out << (st.candidates.kind == candidate_kind::minor_l ? "L:" : "Lhat:");
            for (const auto& [j, v] : st.candidates.members) out << ' ' << j << '(' << scalar_traits<T>::str(v) << ')';
            out << '\n';
        }
        if (st.branch != step_branch::none) {
            out << "branch: " << (st.branch == step_branch::a ? 'a' : st.branch == step_branch::b ? 'b' : 'c');
            if (st.chosen) out << ", chose column " << *st.chosen;
            out << '\n';
        }
    }
    return out.str();
}

template <class T>
std::string serialize_certificate(const certificate_report<T>& rep) {
    std::ostringstream out;
    out << "primal feasibility residual: " << scalar_traits<T>::str(rep.primal_feasibility) << '\n';
    out << "dual feasibility residual: " << scalar_traits<T>::str(rep.dual_feasibility) << '\n';
    out << "duality gap: " << scalar_traits<T>::str(rep.duality_gap) << '\n';
    out << "complementarity residual: " << scalar_traits<T>::str(rep.complementarity) << '\n';
    out << "verdict: " << (rep.pass ? "pass" : "fail") << '\n';
    return out.str();
}

}  // namespace pivotal
