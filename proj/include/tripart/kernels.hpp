#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tripart/fock.hpp"

namespace tripart {

/// Compressed-row copy of a superoperator for repeated y = A x products.
/// Rows are independent, so the product parallelizes without reductions.
struct CsrMatrix {
    std::ptrdiff_t rows = 0;
    std::ptrdiff_t cols = 0;
    std::vector<std::ptrdiff_t> row_ptr;
    std::vector<std::ptrdiff_t> col_idx;
    std::vector<cplx> values;

    static CsrMatrix from(const Operator& op);
    std::size_t nonzeros() const { return values.size(); }
};

/// Reference single-threaded product. Kept as the ground truth for the
/// parallel kernel.
void spmv_serial(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y);

/// OpenMP row-parallel product; identical arithmetic per row, so results are
/// bitwise equal to spmv_serial.
void spmv_parallel(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y);

/// y = x + h * k, element-wise, OpenMP-parallel.
void axpy_parallel(std::span<const cplx> x, cplx h, std::span<const cplx> k, std::span<cplx> y);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int kernel_threads();

}  // namespace tripart
