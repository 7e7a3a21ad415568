#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qsw/quantum.hpp"
#include "support.hpp"

using namespace qsw;

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix(ComplexMatrix::identity(4) * 0.25, {2, 2}));
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(4) * 0.25, {2, 3}), DimensionError);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(4) * 0.5, {2, 2}), ValidationError);

    ComplexMatrix nh(2, 2);
    nh(0, 0) = 1.0;
    nh(0, 1) = 0.5;
    CHECK_THROWS_AS(DensityMatrix(nh, {2}), ValidationError);

    ComplexMatrix neg(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(neg, {2}), ValidationError);
}

TEST_CASE("kraus channel completeness is enforced") {
    const ComplexMatrix half = ComplexMatrix::identity(2) * std::sqrt(0.5);
    CHECK_NOTHROW(KrausChannel({half, half}, "ok"));
    CHECK_THROWS_AS(KrausChannel({half}, "short"), ValidationError);
}

TEST_CASE("identity channel and full dephasing") {
    const DensityMatrix plus = DensityMatrix::from_ket(plus_ket(), {2});
    const KrausChannel id({ComplexMatrix::identity(2)}, "id");
    CHECK(max_abs_diff(apply_channel(id, plus).mat(), plus.mat()) <= 1e-15);

    const auto bases = mub_qubit_bases();
    const DensityMatrix dephased = dephase(plus, bases.first, 0);
    CHECK(max_abs_diff(dephased.mat(), ComplexMatrix::identity(2) * 0.5) <= 1e-15);
}

TEST_CASE("random channels preserve trace and hermiticity") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const KrausChannel ch = test::random_channel(rng, 4, 3);
        const DensityMatrix rho = test::random_density(rng, {4});
        const DensityMatrix out = apply_channel(ch, rho);
        CHECK(std::abs(out.mat().trace() - Complex{1.0, 0.0}) <= 1e-11);
        CHECK(out.mat().is_hermitian(1e-11));
    }
}

TEST_CASE("dephasing is idempotent and matches the conditional decomposition") {
    std::mt19937 rng(32);
    const auto bases = mub_qubit_bases();
    const ProjectorSet& xb = bases.second;
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = test::random_density(rng, {2, 2});
        const DensityMatrix once = dephase(rho, xb, 0);
        const DensityMatrix twice = dephase(once, xb, 0);
        CHECK(max_abs_diff(once.mat(), twice.mat()) <= 1e-13);

        // Oracle: sum_a p_a O_a x rho_{B|a} built outcome by outcome.
        ComplexMatrix expect(4, 4);
        for (const auto& p : xb.projectors()) {
            const ComplexMatrix full = embed(p, {2, 2}, 0);
            const ComplexMatrix selected = full * rho.mat() * full;
            const double pa = selected.trace().real();
            if (pa < 1e-15) continue;
            const ComplexMatrix cond_b = partial_trace(selected, {2, 2}, {1}) * (1.0 / pa);
            expect += kron(p, cond_b) * pa;
        }
        CHECK(max_abs_diff(once.mat(), expect) <= 1e-12);
    }
}

TEST_CASE("dephasing of a Bell state in the z basis") {
    ComplexMatrix bell(4, 1);
    bell(0, 0) = 1.0 / std::sqrt(2.0);
    bell(3, 0) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::from_ket(bell, {2, 2});
    const auto bases = mub_qubit_bases();
    const DensityMatrix out = dephase(rho, bases.first, 0);
    ComplexMatrix expect(4, 4);
    expect(0, 0) = 0.5;
    expect(3, 3) = 0.5;
    CHECK(max_abs_diff(out.mat(), expect) <= 1e-15);
}

TEST_CASE("monitoring channel interpolates between identity and dephasing") {
    std::mt19937 rng(33);
    const auto bases = mub_qubit_bases();
    const DensityMatrix rho = test::random_density(rng, {2, 2});

    const KrausChannel off = monitoring_channel(bases.first, 0.0, 0, {2, 2});
    CHECK(max_abs_diff(apply_channel(off, rho).mat(), rho.mat()) <= 1e-13);

    const KrausChannel strong = monitoring_channel(bases.first, 1.0, 0, {2, 2});
    CHECK(max_abs_diff(apply_channel(strong, rho).mat(), dephase(rho, bases.first, 0).mat()) <=
          1e-13);

    ComplexMatrix bell(4, 1);
    bell(0, 0) = 1.0 / std::sqrt(2.0);
    bell(3, 0) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rb = DensityMatrix::from_ket(bell, {2, 2});
    const KrausChannel mid = monitoring_channel(bases.first, 0.3, 0, {2, 2});
    const ComplexMatrix expect =
        rb.mat() * 0.7 + dephase(rb, bases.first, 0).mat() * 0.3;
    CHECK(max_abs_diff(apply_channel(mid, rb).mat(), expect) <= 1e-13);

    CHECK_THROWS_AS(monitoring_channel(bases.first, 1.2, 0, {2, 2}), ValidationError);
}

TEST_CASE("monitoring compositions combine strengths") {
    std::mt19937 rng(34);
    const auto bases = mub_qubit_bases();
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double e1 = uni(rng);
        const double e2 = uni(rng);
        const DensityMatrix rho = test::random_density(rng, {2, 2});
        const KrausChannel c1 = monitoring_channel(bases.second, e1, 0, {2, 2});
        const KrausChannel c2 = monitoring_channel(bases.second, e2, 0, {2, 2});
        const KrausChannel combined =
            monitoring_channel(bases.second, e1 + e2 - e1 * e2, 0, {2, 2});
        const DensityMatrix seq = apply_channel(c2, apply_channel(c1, rho));
        CHECK(max_abs_diff(seq.mat(), apply_channel(combined, rho).mat()) <= 1e-12);
    }
}

TEST_CASE("gibbs state limits and populations") {
    const ComplexMatrix h = pauli_x() * -0.5;

    const DensityMatrix hot = gibbs_state(h, 0.0);
    CHECK(max_abs_diff(hot.mat(), ComplexMatrix::identity(2) * 0.5) <= 1e-14);

    const DensityMatrix cold = gibbs_state(h, beta_infinity());
    CHECK(max_abs_diff(cold.mat(), projector(plus_ket())) <= 1e-13);

    // beta = 2: populations e^{+1}, e^{-1} over Z in the x eigenbasis.
    const DensityMatrix mid = gibbs_state(h, 2.0);
    const double z = std::exp(1.0) + std::exp(-1.0);
    const ComplexMatrix expect = projector(plus_ket()) * (std::exp(1.0) / z) +
                                 projector(minus_ket()) * (std::exp(-1.0) / z);
    CHECK(max_abs_diff(mid.mat(), expect) <= 1e-13);
    const double p_plus = (projector(plus_ket()) * mid.mat()).trace().real();
    CHECK(p_plus == Catch::Approx(0.8807970779778823).margin(1e-12));
}

TEST_CASE("gibbs state commutes with its hamiltonian") {
    std::mt19937 rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h = test::random_hermitian(rng, 4);
        const DensityMatrix g = gibbs_state(h, 1.3);
        CHECK(std::abs(g.mat().trace() - Complex{1.0, 0.0}) <= 1e-11);
        CHECK(max_abs_diff(g.mat() * h, h * g.mat()) <= 1e-11);
    }
}

TEST_CASE("f_thermal values") {
    CHECK(f_thermal(0.0, 1.0) == 0.0);
    CHECK(f_thermal(beta_infinity(), 1.0) == 1.0);
    CHECK(f_thermal(2.0, 1.0) == Catch::Approx(0.7615941559557649).margin(1e-15));
}

TEST_CASE("qubit MUBs are mutually unbiased") {
    const auto bases = mub_qubit_bases();
    CHECK(bases.first.projectors().size() == 2);
    CHECK(bases.second.projectors().size() == 2);
    for (const auto& pz : bases.first.projectors())
        for (const auto& px : bases.second.projectors()) {
            const double overlap = (pz * px).trace().real();
            CHECK(overlap == Catch::Approx(0.5).margin(1e-15));
        }
}

TEST_CASE("projector set validation rejects non-orthogonal sets") {
    const ComplexMatrix p0 = projector(basis_ket(2, 0));
    const ComplexMatrix pp = projector(plus_ket());
    CHECK_THROWS_AS(ProjectorSet({p0, pp}, {"a", "b"}), ValidationError);
}

TEST_CASE("trace distance basics") {
    const ComplexMatrix p0 = projector(basis_ket(2, 0));
    const ComplexMatrix p1 = projector(basis_ket(2, 1));
    CHECK(trace_distance(p0, p1) == Catch::Approx(1.0).margin(1e-13));
    CHECK(trace_distance(p0, p0) <= 1e-15);
}
