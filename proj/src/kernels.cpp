#include "tripart/kernels.hpp"

#include "tripart/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tripart {

CsrMatrix CsrMatrix::from(const Operator& op) {
    const Eigen::SparseMatrix<cplx, Eigen::RowMajor, std::ptrdiff_t> r(op);
    CsrMatrix out;
    out.rows = r.rows();
    out.cols = r.cols();
    out.row_ptr.assign(r.outerIndexPtr(), r.outerIndexPtr() + r.rows() + 1);
    const auto nnz = static_cast<std::size_t>(r.nonZeros());
    out.col_idx.assign(r.innerIndexPtr(), r.innerIndexPtr() + nnz);
    out.values.assign(r.valuePtr(), r.valuePtr() + nnz);
    return out;
}

namespace {

void check_shapes(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y) {
    if (static_cast<std::ptrdiff_t>(x.size()) != a.cols ||
        static_cast<std::ptrdiff_t>(y.size()) != a.rows) {
        throw DimensionError("spmv: vector length does not match matrix shape");
    }
}

}  // namespace

void spmv_serial(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y) {
    check_shapes(a, x, y);
    for (std::ptrdiff_t i = 0; i < a.rows; ++i) {
        cplx acc = 0.0;
        for (std::ptrdiff_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            acc += a.values[k] * x[a.col_idx[k]];
        }
        y[i] = acc;
    }
}

void spmv_parallel(const CsrMatrix& a, std::span<const cplx> x, std::span<cplx> y) {
    check_shapes(a, x, y);
    const std::ptrdiff_t n = a.rows;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (std::ptrdiff_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            acc += a.values[k] * x[a.col_idx[k]];
        }
        y[i] = acc;
    }
}

void axpy_parallel(std::span<const cplx> x, cplx h, std::span<const cplx> k, std::span<cplx> y) {
    if (x.size() != k.size() || x.size() != y.size()) {
        throw DimensionError("axpy: length mismatch");
    }
    const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = x[i] + h * k[i];
}

int kernel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace tripart
