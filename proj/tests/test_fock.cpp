#include <doctest.h>

#include <cmath>

#include "tripart/errors.hpp"
#include "tripart/fock.hpp"

using namespace tripart;

namespace {
DenseMatrix dense(const Operator& op) { return DenseMatrix(op); }
}  // namespace

TEST_SUITE("fock") {

TEST_CASE("annihilation has sqrt(k) on the superdiagonal") {
    const DenseMatrix a = dense(annihilation(4));
    CHECK(a.rows() == 5);
    for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 5; ++c) {
            const double want = (c == r + 1) ? std::sqrt(double(c)) : 0.0;
            CHECK(std::abs(a(r, c) - want) < 1e-15);
        }
    }
}

TEST_CASE("commutator [a, a+] is identity except the truncation corner") {
    const int levels = 6;
    const Operator a = annihilation(levels);
    const DenseMatrix c = dense(commutator(a, dagger(a)));
    for (int k = 0; k < levels; ++k) CHECK(std::abs(c(k, k) - 1.0) < 1e-14);
    // Known truncation artefact: the top level picks up -levels.
    CHECK(std::abs(c(levels, levels) + double(levels)) < 1e-14);
    CHECK((c - DenseMatrix(c.diagonal().asDiagonal())).norm() < 1e-14);
}

TEST_CASE("sigma_minus lowers e to g") {
    const DenseMatrix s = dense(sigma_minus());
    CHECK(s(0, 1) == cplx(1.0));
    CHECK(s(1, 0) == cplx(0.0));
    CHECK(s(0, 0) == cplx(0.0));
}

TEST_CASE("basis index ordering is atom slowest, phonon fastest") {
    const HilbertSpace space(2, 3);
    CHECK(space.total_dim() == 2 * 3 * 4);
    CHECK(space.index(AtomLevel::g, 0, 0) == 0);
    CHECK(space.index(AtomLevel::g, 0, 1) == 1);
    CHECK(space.index(AtomLevel::g, 1, 0) == 4);
    CHECK(space.index(AtomLevel::e, 0, 0) == 12);
    CHECK(space.index(AtomLevel::e, 2, 3) == 23);
    CHECK_THROWS_AS(space.index(AtomLevel::g, 3, 0), DimensionError);
}

TEST_CASE("invalid truncations are rejected") {
    CHECK_THROWS_AS(HilbertSpace(0, 3), DimensionError);
    CHECK_THROWS_AS(HilbertSpace(3, -1), DimensionError);
    CHECK_THROWS_AS(annihilation(0), DimensionError);
}

TEST_CASE("embed matches the explicit Kronecker product") {
    const HilbertSpace space(2, 3);
    const Operator a = annihilation(2);
    const Operator b = annihilation(3);
    const Operator sm = sigma_minus();
    const DenseMatrix want_a = dense(kron(kron(identity(2), a), identity(4)));
    const DenseMatrix want_b = dense(kron(kron(identity(2), identity(3)), b));
    const DenseMatrix want_s = dense(kron(kron(sm, identity(3)), identity(4)));
    CHECK((dense(embed(a, Slot::cavity, space)) - want_a).norm() == 0.0);
    CHECK((dense(embed(b, Slot::mech, space)) - want_b).norm() == 0.0);
    CHECK((dense(embed(sm, Slot::atom, space)) - want_s).norm() == 0.0);
    CHECK_THROWS_AS(embed(b, Slot::cavity, space), DimensionError);
}

TEST_CASE("embedding preserves products and operators on distinct slots commute") {
    const HilbertSpace space(3, 3);
    const Operator a = annihilation(3);
    const Operator ad = dagger(a);
    const DenseMatrix lhs = dense(embed(Operator(ad * a), Slot::cavity, space));
    const DenseMatrix rhs = dense(embed(ad, Slot::cavity, space)) * dense(embed(a, Slot::cavity, space));
    CHECK((lhs - rhs).norm() < 1e-14);

    const Operator ea = embed(a, Slot::cavity, space);
    const Operator eb = embed(annihilation(3), Slot::mech, space);
    const Operator es = embed(sigma_minus(), Slot::atom, space);
    CHECK(max_abs(commutator(ea, eb)) == 0.0);
    CHECK(max_abs(commutator(ea, dagger(eb))) == 0.0);
    CHECK(max_abs(commutator(es, ea)) == 0.0);
    CHECK(max_abs(commutator(dagger(es), eb)) == 0.0);
}

TEST_CASE("number operators are diagonal with the Fock occupations") {
    const HilbertSpace space(2, 3);
    const Operator a = embed(annihilation(2), Slot::cavity, space);
    const Operator b = embed(annihilation(3), Slot::mech, space);
    const DenseMatrix nn = dense(dagger(a) * a);
    const DenseMatrix nm = dense(dagger(b) * b);
    for (int s = 0; s < 2; ++s) {
        for (int n = 0; n <= 2; ++n) {
            for (int m = 0; m <= 3; ++m) {
                const int i = space.index(AtomLevel(s), n, m);
                CHECK(std::abs(nn(i, i) - double(n)) < 1e-14);
                CHECK(std::abs(nm(i, i) - double(m)) < 1e-14);
            }
        }
    }
    CHECK((nn - DenseMatrix(nn.diagonal().asDiagonal())).norm() < 1e-14);
    CHECK(is_hermitian(dagger(a) * a));
    CHECK_FALSE(is_hermitian(a));
}

}  // TEST_SUITE
