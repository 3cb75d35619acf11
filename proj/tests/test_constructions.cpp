#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "discrim/constructions.hpp"
#include "discrim/norms.hpp"

#include <cmath>

using namespace discrim;

namespace {

Povm flag_basis_povm(int d) {
    std::vector<HermitianOperator> effects;
    for (int i = 0; i < d; ++i) {
        Matrix e = Matrix::Zero(d, d);
        e(i, i) = 1.0;
        effects.emplace_back(HermitianOperator(std::move(e)));
    }
    return Povm(std::move(effects));
}

} // namespace

TEST_CASE("werner_pair structure") {
    for (int d : {2, 3, 4}) {
        auto wp = werner_pair(d);
        CHECK(std::abs((wp.rho.op.matrix() * wp.sigma.op.matrix()).trace()) <= 1e-12);
        CHECK(all_norm(wp.difference()) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(wp.rho.op.matrix().trace().real() == doctest::Approx(1.0));
        CHECK(wp.sigma.op.matrix().trace().real() == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(werner_pair(1), std::invalid_argument);
}

TEST_CASE("werner_pair PPT value") {
    auto wp = werner_pair(3);
    auto rep = ppt_norm(wp.difference());
    CHECK(std::abs(rep.lower - 1.0) <= 1e-2);
    CHECK(rep.upper >= 1.0 - 1e-7);
}

TEST_CASE("werner states commute with U (x) U") {
    RngStream rng(1);
    auto wp = werner_pair(3);
    for (int t = 0; t < 10; ++t) {
        Matrix u = haar_unitary(3, rng);
        Matrix uu = Matrix::Zero(9, 9);
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) uu.block(a * 3, c * 3, 3, 3) = u(a, c) * u;
        CHECK((uu * wp.rho.op.matrix() - wp.rho.op.matrix() * uu).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((uu * wp.sigma.op.matrix() - wp.sigma.op.matrix() * uu).cwiseAbs().maxCoeff() <=
              1e-9);
    }
}

TEST_CASE("data_hiding_pair exact global value and PPT interval") {
    RngStream rng(2);
    for (int t = 0; t < 5; ++t) {
        auto pair = data_hiding_pair(4, rng);
        CHECK(all_norm(pair.difference()) == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(std::abs((pair.rho.op.matrix() * pair.sigma.op.matrix()).trace()) <= 1e-9);
    }
    CHECK_THROWS_AS(data_hiding_pair(3, rng), std::invalid_argument);

    RngStream prng(3);
    for (int t = 0; t < 5; ++t) {
        auto pair = data_hiding_pair(4, prng);
        auto rep = ppt_norm(pair.difference());
        CHECK(rep.lower >= 0.3);
        CHECK(rep.upper <= 2.0 + 1e-6);
    }
}

TEST_CASE("data hiding one-way value decays with dimension") {
    RngStream rng(4);
    double v2 = 0.0, v4 = 0.0;
    for (int t = 0; t < 3; ++t) {
        auto p2 = data_hiding_pair(2, rng);
        RngStream s2 = rng.substream(static_cast<std::uint64_t>(10 + t));
        v2 += locc_one_way_lower(p2.difference(), {}, &s2).first;
        auto p4 = data_hiding_pair(4, rng);
        RngStream s4 = rng.substream(static_cast<std::uint64_t>(20 + t));
        v4 += locc_one_way_lower(p4.difference(), {}, &s4).first;
    }
    // Theta(1/sqrt(d)) scaling: scaled values stay within a modest band
    const double r2 = (v2 / 3.0) * std::sqrt(2.0);
    const double r4 = (v4 / 3.0) * std::sqrt(4.0);
    CHECK(r2 >= 0.5);
    CHECK(r2 <= 4.0);
    CHECK(r4 >= 0.5);
    CHECK(r4 <= 4.0);
}

TEST_CASE("lo_vs_locc_delta block structure") {
    RngStream rng(5);
    auto blocks = lo_vs_locc_delta(4, rng);
    CHECK(static_cast<int>(blocks.blocks().size()) == 4);
    for (const auto& b : blocks.blocks()) {
        CHECK(std::abs(b.matrix().trace().real()) <= 1e-9);
        auto [spec, v] = eig_hermitian(b);
        for (int i = 0; i < 2; ++i) CHECK(spec.values(i) == doctest::Approx(1.0));
        for (int i = 2; i < 4; ++i) CHECK(spec.values(i) == doctest::Approx(-1.0));
        CHECK(trace_norm(b) == doctest::Approx(4.0));
        CHECK(operator_norm(b) == doctest::Approx(1.0));
    }
    CHECK(locc_one_way_exact_flagged(blocks) == doctest::Approx(16.0));
    CHECK_THROWS_AS(lo_vs_locc_delta(3, rng), std::invalid_argument);
}

TEST_CASE("flagged_to_state_pair reproduces the one-way value 2") {
    RngStream rng(6);
    auto blocks = lo_vs_locc_delta(4, rng);
    auto pair = flagged_to_state_pair(blocks);
    CHECK(std::abs((pair.rho.op.matrix() * pair.sigma.op.matrix()).trace()) <= 1e-9);
    HermitianOperator diff = pair.difference();
    CHECK(all_norm(diff) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(one_way_value(diff, flag_basis_povm(4)) == doctest::Approx(2.0).epsilon(1e-9));

    DensityOperator rho = uniform_state(3, rng);
    CHECK_THROWS_AS(flagged_to_state_pair(FlaggedBlockOperator({rho.op})),
                    std::invalid_argument);
}

TEST_CASE("net_povm_family certified d = 2 family") {
    RngStream rng(7);
    PovmFamily family = net_povm_family(2, 0.5, rng);
    CHECK(family.members.size() <= 1296);
    CHECK(family.epsilon == 0.5);

    RngStream targets(8);
    int violations = 0;
    for (int t = 0; t < 200; ++t) {
        HermitianOperator delta = gue_standard(2, targets);
        double best = 0.0;
        for (const auto& m : family.members) best = std::max(best, povm_norm(delta, m));
        if (best < (1.0 - 0.5) * all_norm(delta) - 1e-9) ++violations;
    }
    CHECK(violations == 0);
    CHECK_THROWS_AS(net_povm_family(2, 1.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(net_povm_family(4, 0.5, rng), std::invalid_argument);
}

TEST_CASE("net direction is its own witness") {
    RngStream rng(9);
    PovmFamily family = net_povm_family(2, 0.5, rng);
    const Povm& m0 = family.members.front();
    HermitianOperator a(m0.effects()[0].matrix() - m0.effects()[1].matrix());
    // povm_norm of the direction under its own POVM equals |<A,A>| after the
    // two-outcome split: |tr((Id+A)/2 A)| + |tr((Id-A)/2 A)| >= |tr(A^2)| when
    // trace A = 0; at minimum it certifies a positive fraction of ||A||_1
    CHECK(povm_norm(a, m0) >= 0.5 * hs_inner(a, a) - 1e-9);
}

TEST_CASE("net_povm_family randomized d = 3 mode") {
    RngStream rng(10);
    PovmFamily family = net_povm_family(3, 0.9, rng);
    CHECK(family.members.size() >= 1);
    for (const auto& m : family.members) CHECK(m.dim() == 3);
}

TEST_CASE("rank1_refinement completeness and monotonicity") {
    RngStream rng(11);
    // rank-1 input is unchanged up to pruning
    Povm r1 = random_rank1_povm(3, 2, rng);
    Povm refined = rank1_refinement(r1);
    CHECK(refined.size() == r1.size());

    Povm id_povm({HermitianOperator::Identity(2)});
    Povm split = rank1_refinement(id_povm);
    CHECK(split.size() == 2);

    for (int t = 0; t < 20; ++t) {
        DensityOperator a = uniform_state(3, rng);
        DensityOperator b = uniform_state(3, rng);
        Matrix half_sum = 0.5 * (a.op.matrix() + b.op.matrix());
        Matrix rest = Matrix::Identity(3, 3) - half_sum;
        Povm coarse({HermitianOperator(half_sum), HermitianOperator(rest)});
        Povm fine = rank1_refinement(coarse);
        HermitianOperator delta = traceless_sphere_direction(3, rng);
        CHECK(povm_norm(delta, fine) >= povm_norm(delta, coarse) - 1e-9);
        Matrix total = Matrix::Zero(3, 3);
        for (const auto& e : fine.effects()) total += e.matrix();
        CHECK((total - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("random_rank1_povm completeness and pilot interval") {
    RngStream rng(12);
    Povm m = random_rank1_povm(3, 5, rng);
    Matrix total = Matrix::Zero(3, 3);
    for (const auto& e : m.effects()) total += e.matrix();
    CHECK((total - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK_THROWS_AS(random_rank1_povm(3, 0, rng), std::invalid_argument);

    const int d = 8;
    RngStream prng(13);
    Povm big = random_rank1_povm(d, 20, prng);
    RngStream drng(14);
    for (int t = 0; t < 10; ++t) {
        DensityOperator a = uniform_state(d, drng);
        DensityOperator b = uniform_state(d, drng);
        HermitianOperator delta(a.op.matrix() - b.op.matrix());
        const double ratio = povm_norm(delta, big) * std::sqrt(static_cast<double>(d)) /
                             all_norm(delta);
        CHECK(ratio >= 0.2);
        CHECK(ratio <= 1.5);
    }
}

TEST_CASE("constructions are deterministic given the stream") {
    RngStream a(15), b(15);
    auto p1 = data_hiding_pair(4, a);
    auto p2 = data_hiding_pair(4, b);
    CHECK((p1.rho.op.matrix() - p2.rho.op.matrix()).norm() == 0.0);
    RngStream c(16), d(16);
    auto b1 = lo_vs_locc_delta(4, c);
    auto b2 = lo_vs_locc_delta(4, d);
    for (std::size_t i = 0; i < b1.blocks().size(); ++i)
        CHECK((b1.blocks()[i].matrix() - b2.blocks()[i].matrix()).norm() == 0.0);
}
