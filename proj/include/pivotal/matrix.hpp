#pragma once

#include <cstddef>
#include <vector>

namespace pivotal {

template <class T>
class matrix {
public:
    matrix() : rows_(0), cols_(0) {}
    matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const matrix& o) const { return !(*this == o); }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

}  // namespace pivotal
