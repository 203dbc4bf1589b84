#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "scalar.hpp"

namespace pivotal {

// max f.x subject to A x <= b, x >= 0, with k constraints and n variables.
template <class T>
struct lp_instance {
    std::size_t k = 0;
    std::size_t n = 0;
    matrix<T> A;
    std::vector<T> b;
    std::vector<T> f;

    void validate() const {
        if (k < 1 || n < 1) throw std::invalid_argument("instance needs k >= 1 and n >= 1");
        if (A.rows() != k || A.cols() != n) throw std::invalid_argument("A dimensions disagree with k, n");
        if (b.size() != k) throw std::invalid_argument("b length disagrees with k");
        if (f.size() != n) throw std::invalid_argument("f length disagrees with n");
        if constexpr (std::is_same_v<T, double>) {
            auto finite = [](double v) { return std::isfinite(v); };
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!finite(A(i, j))) throw std::invalid_argument("non-finite entry in A");
            for (const auto& v : b)
                if (!finite(v)) throw std::invalid_argument("non-finite entry in b");
            for (const auto& v : f)
                if (!finite(v)) throw std::invalid_argument("non-finite entry in f");
        }
    }

    bool operator==(const lp_instance& o) const {
        return k == o.k && n == o.n && A == o.A && b == o.b && f == o.f;
    }
};

}  // namespace pivotal
