#include "doctest.h"
#include "homalg/doldkan.hpp"
#include "homalg/generators.hpp"

using namespace homalg;

namespace {
const Coefficients Z = Coefficients::integers();

ChainComplex point() { return ChainComplex(Z, {{0, 1}}, {}); }
}  // namespace

TEST_CASE("gamma of a point is the constant simplicial module") {
    auto m = gamma(point(), 3);
    CHECK_NOTHROW(validate(m));
    for (int n = 0; n <= 3; ++n) CHECK(m.level(n) == 1);
    for (auto& [key, f] : m.faces) CHECK(f == Mat::Identity(1, 1));
    auto nm = normalized_chains(m);
    CHECK(nm == point());
    auto un = unnormalized_chains(m);
    // below the truncation level the degenerate part contributes nothing
    for (int n = 0; n < m.bound; ++n) CHECK(homology(un, n) == homology(nm, n));
}

TEST_CASE("gamma level ranks count surjections") {
    auto c = ChainComplex(Z, {{1, 1}}, {});
    auto m = gamma(c);  // margin 2: levels up to 3
    CHECK(m.level(0) == 0);
    CHECK(m.level(1) == 1);
    CHECK(m.level(2) == 2);
    CHECK(m.level(3) == 3);
    CHECK_NOTHROW(validate(m));
    CHECK(normalized_chains(m) == c);
}

TEST_CASE("gamma rejects negative support") {
    auto c = ChainComplex(Z, {{-1, 1}}, {});
    CHECK_THROWS_AS(gamma(c), NegativeSupport);
}

TEST_CASE("N of Gamma is the identity bit for bit") {
    SplitMix64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto c = random_complex(rng, Z, 0, 2, 2);
        auto m = gamma(c);
        CHECK_NOTHROW(validate(m));
        CHECK(normalized_chains(m) == c);
    }
}

TEST_CASE("validate rejects a broken simplicial identity") {
    auto m = gamma(ChainComplex(Z, {{0, 1}, {1, 1}}, {{1, mat(1, 1, {2})}}));
    CHECK_NOTHROW(validate(m));
    auto bad = m;
    bad.faces[{1, 0}] = bad.face(1, 0) + Mat::Identity(bad.level(0), bad.level(1));
    CHECK_THROWS_AS(validate(bad), SimplicialIdentityViolation);
}

TEST_CASE("normalized and unnormalized chains have the same homology") {
    SplitMix64 rng(7);
    for (int i = 0; i < 15; ++i) {
        auto c = random_complex(rng, Z, 0, 2, 2);
        auto m = gamma(c);
        auto nm = normalized_chains(m);
        auto un = unnormalized_chains(m);
        for (int n = 0; n < m.bound; ++n) CHECK(homology(un, n) == homology(nm, n));
    }
}

TEST_CASE("latching quotient is isomorphic to the normalized chains") {
    SplitMix64 rng(11);
    for (int i = 0; i < 30; ++i) {
        auto c = random_complex(rng, Z, 0, 2, 2);
        auto m = gamma(c);
        auto nm = normalized_chains(m);
        auto lt = latching_complex(m);
        CHECK(lt.complex.ranks() == nm.ranks());
        CHECK_NOTHROW(validate(lt.proj));
        // explicit witness: project the normalized basis into the quotient
        std::map<int, Mat> comps;
        for (int n = 0; n <= m.bound; ++n) {
            long r = m.level(n);
            if (r == 0 || nm.rank(n) == 0) continue;
            std::vector<Mat> stacked;
            for (int j = 1; j <= n; ++j) stacked.push_back(m.face(n, j));
            Mat ker = n == 0 ? Mat::Identity(r, r) : kernel_basis(vconcat(stacked, r), Z);
            Mat phi = lt.proj.comp(n) * ker;
            CHECK(abs(det_bareiss(phi)) == 1);  // degreewise isomorphism over Z
            comps[n] = phi;
        }
        CHECK_NOTHROW(validate(ChainMap{nm, lt.complex, comps}));
    }
}

TEST_CASE("skeletal filtration has concentrated gaps with latching values") {
    SplitMix64 rng(13);
    for (int i = 0; i < 30; ++i) {
        auto c = random_complex(rng, Z, 0, 2, 2);
        auto m = gamma(c);
        auto nm = normalized_chains(m);
        auto f = skeletal_filtration(m);
        CHECK_NOTHROW(validate(f));
        CHECK(f.total() == nm);
        for (int p = 0; p <= f.top(); ++p) {
            auto g = gap(f, p - 1, p);
            for (int n = g.complex.lo(); n <= g.complex.hi(); ++n)
                CHECK((n == p || g.complex.rank(n) == 0));
            CHECK(g.complex.rank(p) == nm.rank(p));
        }
        CHECK(complex_from_filtration(f) == nm);
    }
}

TEST_CASE("complex_from_filtration rejects spread-out gaps") {
    auto c = ChainComplex(Z, {{0, 1}, {1, 1}}, {{1, mat(1, 1, {2})}});
    FilteredComplex f;
    f.steps = {c};
    CHECK_THROWS_AS(complex_from_filtration(f), GapNotConcentrated);
}

TEST_CASE("simplicial spectral sequence degenerates at E_2") {
    auto mconst = gamma(point(), 2);
    auto pages = simplicial_ss(mconst);
    CHECK(pages[1].entries.size() == 1);
    CHECK(pages[1].entries.at({0, 0}).module == FgModule::free(Z, 1));

    SplitMix64 rng(17);
    for (int i = 0; i < 8; ++i) {
        auto c = random_complex(rng, Z, 0, 2, 2);
        auto m = gamma(c);
        auto nm = normalized_chains(m);
        auto pages2 = simplicial_ss(m);
        // E_1 concentrated on the q = 0 row with the latching values
        for (auto& [key, e] : pages2[0].entries) {
            CHECK(key.second == 0);
            CHECK(e.module == FgModule::free(Z, nm.rank(key.first)));
        }
        // E_2 = homology of N(M), and no differentials from page 2 on
        for (size_t r = 1; r < pages2.size(); ++r) {
            CHECK(pages2[r].differentials.empty());
            CHECK(pages2[r].entries.size() == pages2[1].entries.size());
            for (auto& [key, e] : pages2[r].entries) {
                CHECK(key.second == 0);
                CHECK(e.module == homology(nm, key.first));
            }
        }
        auto [einf, rep] = e_infinity(skeletal_filtration(m));
        CHECK(rep.ok);
    }
}

TEST_CASE("gamma over a prime field round-trips") {
    Coefficients F3 = Coefficients::prime_field(3);
    SplitMix64 rng(19);
    for (int i = 0; i < 10; ++i) {
        auto c = random_complex(rng, F3, 0, 2, 2);
        auto m = gamma(c);
        CHECK_NOTHROW(validate(m));
        CHECK(normalized_chains(m) == c);
    }
}
