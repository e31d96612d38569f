#include <doctest.h>

#include <random>
#include <vector>

#include "tripart/errors.hpp"
#include "tripart/kernels.hpp"
#include "tripart/model.hpp"

using namespace tripart;

TEST_SUITE("kernels") {

TEST_CASE("CSR product matches Eigen's sparse product") {
    SystemParams p;
    p.delta = 1.0;
    p.j_coupling = 2.0;
    p.gamma_m = 0.3;
    p.m_th = 0.1;
    const Liouvillian l = build_liouvillian(p, HilbertSpace(3, 4));
    const CsrMatrix csr = CsrMatrix::from(l.matrix);
    CHECK(csr.nonzeros() == static_cast<std::size_t>(l.matrix.nonZeros()));

    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    Vector x(l.matrix.cols());
    for (auto& v : x) v = cplx(g(rng), g(rng));
    const Vector want = l.matrix * x;

    std::vector<cplx> ys(x.size()), yp(x.size());
    spmv_serial(csr, {x.data(), static_cast<std::size_t>(x.size())}, ys);
    spmv_parallel(csr, {x.data(), static_cast<std::size_t>(x.size())}, yp);
    double err = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) err = std::max(err, std::abs(ys[i] - want(i)));
    CHECK(err < 1e-12 * (1.0 + want.cwiseAbs().maxCoeff()));
    CHECK(ys == yp);  // bitwise
}

TEST_CASE("axpy and shape checks") {
    const std::vector<cplx> x{1.0, 2.0}, k{cplx(0, 1), 4.0};
    std::vector<cplx> y(2);
    axpy_parallel(x, 0.5, k, y);
    CHECK(y[0] == cplx(1.0, 0.5));
    CHECK(y[1] == cplx(4.0, 0.0));

    const CsrMatrix csr = CsrMatrix::from(identity(3));
    std::vector<cplx> small(2), out(3);
    CHECK_THROWS_AS(spmv_serial(csr, small, out), DimensionError);
    CHECK_THROWS_AS(spmv_parallel(csr, small, out), DimensionError);
    CHECK(kernel_threads() >= 1);
}

}  // TEST_SUITE
