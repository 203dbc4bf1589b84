#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace pivotal {

// Column Selection Record: one row per iteration, 1-based column indices.
// p_col is absent only in the final row of a NoSolution run.
struct csr_row {
    int iteration = 0;
    int z_col = 0;
    std::optional<int> p_col;

    bool operator==(const csr_row& o) const {
        return iteration == o.iteration && z_col == o.z_col && p_col == o.p_col;
    }
};

struct csr {
    std::vector<csr_row> rows;

    bool in_p_column(int j) const {
        for (const auto& r : rows)
            if (r.p_col && *r.p_col == j) return true;
        return false;
    }
    bool in_z_column(int j) const {
        for (const auto& r : rows)
            if (r.z_col == j) return true;
        return false;
    }
    // count(j): appearances of j across both columns.
    std::map<int, int> counts() const {
        std::map<int, int> c;
        for (const auto& r : rows) {
            ++c[r.z_col];
            if (r.p_col) ++c[*r.p_col];
        }
        return c;
    }
    bool operator==(const csr& o) const { return rows == o.rows; }
};

}  // namespace pivotal
