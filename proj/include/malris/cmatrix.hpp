#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace malris {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense row-major complex matrix. Rows are contiguous so that a row can be
// handed to the dot-product kernels without copying.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols, cplx fill = {})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<cplx> flat() noexcept { return data_; }
    std::span<const cplx> flat() const noexcept { return data_; }

    // Copy of the selected rows, in the given order.
    CMatrix select_rows(std::span<const std::size_t> indices) const {
        CMatrix out(indices.size(), cols_);
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (indices[i] >= rows_) throw std::out_of_range("CMatrix::select_rows: row index");
            auto src = row(indices[i]);
            std::copy(src.begin(), src.end(), out.row(i).begin());
        }
        return out;
    }

    bool operator==(const CMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

}  // namespace malris
