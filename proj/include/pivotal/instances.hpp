#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "csr.hpp"
#include "instance.hpp"
#include "solver.hpp"

namespace pivotal {

template <class T>
struct expected_result {
    solve_status status = solve_status::optimum;
    int iterations = 0;
    std::vector<csr_row> record;
    std::vector<double> x;  // as printed, rounded
    std::vector<double> y;
    double tolerance = 1e-9;
};

template <class T>
struct canned_example_data {
    int id = 0;
    lp_instance<T> instance;
    expected_result<T> expected;
    std::optional<expected_result<T>> index_rule_expected;
};

template <class T>
lp_instance<T> klee_minty(std::size_t n) {
    if (n < 1) throw std::invalid_argument("klee_minty needs n >= 1");
    if (std::is_same_v<T, double> && n > 15)
        throw std::domain_error("klee_minty entries overflow Binary64 integer range for n > 15; use the rational scalar");
    lp_instance<T> inst;
    inst.k = n;
    inst.n = n;
    inst.A = matrix<T>(n, n, T(0));
    inst.b.resize(n);
    inst.f.resize(n);
    std::vector<T> pow10(2 * n, T(1));
    for (std::size_t i = 1; i < pow10.size(); ++i) pow10[i] = pow10[i - 1] * T(10);
    for (std::size_t j = 0; j < n; ++j) inst.f[j] = pow10[n - 1 - j];
    for (std::size_t i = 0; i < n; ++i) {
        inst.A(i, i) = T(1);
        for (std::size_t j = 0; j < i; ++j) inst.A(i, j) = T(2) * pow10[i - j];
        inst.b[i] = pow10[2 * i];
    }
    return inst;
}

namespace detail {

template <class T>
lp_instance<T> make_instance(std::size_t k, std::size_t n, std::initializer_list<long long> a,
                             std::initializer_list<long long> b, std::initializer_list<long long> f) {
    lp_instance<T> inst;
    inst.k = k;
    inst.n = n;
    inst.A = matrix<T>(k, n);
    auto it = a.begin();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) inst.A(i, j) = scalar_traits<T>::from_int(*it++);
    for (auto v : b) inst.b.push_back(scalar_traits<T>::from_int(v));
    for (auto v : f) inst.f.push_back(scalar_traits<T>::from_int(v));
    return inst;
}

}  // namespace detail

template <class T>
canned_example_data<T> canned_example(int id) {
    canned_example_data<T> ex;
    ex.id = id;
    switch (id) {
        case 1:
            ex.instance = detail::make_instance<T>(2, 2, {1, 1, -1, 0}, {10, -5}, {-1, 1});
            ex.expected = {solve_status::optimum, 2,
                           {{1, 4, 1}, {2, 2, 3}},
                           {5, 5}, {1, 2}, 1e-9};
            break;
        case 2:
            ex.instance = klee_minty<T>(3);
            ex.expected = {solve_status::optimum, 1,
                           {{1, 6, 3}},
                           {0, 0, 10000}, {0, 0, 1}, 1e-9};
            ex.index_rule_expected = expected_result<T>{solve_status::optimum, 2,
                                                        {{1, 4, 3}, {2, 6, 4}},
                                                        {0, 0, 10000}, {0, 0, 1}, 1e-9};
            break;
        case 3:
            ex.instance = detail::make_instance<T>(2, 3, {-2, -2, 1, -4, 3, -2}, {-7, -3}, {-9, 1, -1});
            ex.expected = {solve_status::optimum, 3,
                           {{1, 4, 2}, {2, 1, 3}, {3, 5, 3}},
                           {0, 17, 27}, {1, 1}, 1e-9};
            break;
        case 4:
            ex.instance = detail::make_instance<T>(2, 2, {-1, 2, 2, 1}, {-4, 3}, {1, 1});
            ex.expected = {solve_status::no_solution, 3,
                           {{1, 3, 2}, {2, 4, 1}, {3, 4, std::nullopt}},
                           {}, {}, 1e-9};
            break;
        case 5:
            ex.instance = detail::make_instance<T>(3, 4, {8, 3, 4, 1, 2, 6, 1, 5, 1, 4, 5, 2}, {7, 3, 8}, {3, 4, 1, 7});
            ex.expected = {solve_status::optimum, 5,
                           {{1, 6, 3}, {2, 4, 1}, {3, 5, 2}, {4, 7, 5}, {5, 3, 6}},
                           {0.8421, 0, 0, 0.2632}, {0.0263, 1.3947, 0}, 1e-3};
            ex.index_rule_expected = expected_result<T>{solve_status::optimum, 3,
                                                        {{1, 4, 1}, {2, 5, 2}, {3, 7, 5}},
                                                        {0.8421, 0, 0, 0.2632}, {0.0263, 1.3947, 0}, 1e-3};
            break;
        default:
            throw std::invalid_argument("canned example id must be 1..5");
    }
    return ex;
}

// Deterministic across platforms: std::mt19937_64 seeded with `seed`; entries
// drawn for A row by row, then b, then f; each entry maps a raw 64-bit draw
// into [lo, hi] by rejection sampling (no distribution objects involved).
template <class T>
lp_instance<T> random_instance(std::size_t k, std::size_t n, std::uint64_t seed, long long lo = -9,
                               long long hi = 9) {
    if (k < 1 || n < 1) throw std::invalid_argument("random_instance needs k >= 1 and n >= 1");
    if (lo > hi) throw std::invalid_argument("empty entry range");
    std::mt19937_64 rng(seed);
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const std::uint64_t reject_above = span == 0 ? ~0ULL : ~0ULL - (~0ULL % span + 1) % span;
    auto draw = [&]() -> T {
        std::uint64_t w = rng();
        while (w > reject_above) w = rng();
        if (span) w %= span;
        return scalar_traits<T>::from_int(lo + static_cast<long long>(w));
    };
    lp_instance<T> inst;
    inst.k = k;
    inst.n = n;
    inst.A = matrix<T>(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) inst.A(i, j) = draw();
    inst.b.resize(k);
    for (std::size_t i = 0; i < k; ++i) inst.b[i] = draw();
    inst.f.resize(n);
    for (std::size_t j = 0; j < n; ++j) inst.f[j] = draw();
    return inst;
}

// Batch dimensions k, n in 1..5 for a seed, drawn on a stream separate from
// the entry draws so dimensions and entries stay independent.
inline std::pair<std::size_t, std::size_t> random_dims(std::uint64_t seed) {
    std::mt19937_64 g(seed ^ 0x517cc1b727220a95ULL);
    const std::size_t k = static_cast<std::size_t>(g() % 5) + 1;
    const std::size_t n = static_cast<std::size_t>(g() % 5) + 1;
    return {k, n};
}

}  // namespace pivotal
