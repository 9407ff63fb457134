#ifndef HOMALG_FILTERED_HPP
#define HOMALG_FILTERED_HPP

#include <string>
#include <utility>
#include <vector>

#include "homalg/chain.hpp"

namespace homalg {

// Exhaustive filtration 0 = X(-1) ⊆ X(0) ⊆ ... ⊆ X(P) = total, each step a
// degreewise-injective chain map with saturated image over Z.
struct FilteredComplex {
    std::vector<ChainComplex> steps;
    std::vector<ChainMap> incls;  // incls[p] : steps[p] -> steps[p+1]

    int top() const { return static_cast<int>(steps.size()) - 1; }
    const ChainComplex& total() const { return steps.back(); }
    Mat embedding(int p, int n) const;  // steps[p]_n -> total_n composite
};

void validate(const FilteredComplex& f);

// Quotient model X(i,j) = X(j)/X(i); i below 0 means the zero step.
struct GapObject {
    int i = 0, j = 0;
    ChainComplex complex;
    ChainMap incl;  // X(i) -> X(j), zero map when i < 0
    ChainMap proj;  // X(j) -> complex
};

GapObject gap(const FilteredComplex& f, int i, int j);  // IndexOrder if i > j

// Page entry E_r^{p,q} with its chosen generators as columns in the total
// complex's degree p+q coordinates, free generators first.
struct PageEntry {
    FgModule module;
    Mat gens;
    std::vector<Int> orders;  // 0 for free generators
};

struct SpectralSequencePage {
    int r = 1;
    std::map<std::pair<int, int>, PageEntry> entries;  // nonzero entries only
    // d_r : E_r^{p,q} -> E_r^{p-r,q+r-1} on the chosen generators, keyed by
    // source (p,q); absent means zero.
    std::map<std::pair<int, int>, Mat> differentials;
};

// Page r computed directly from the image formula
// Z_r^{p,q} = F_p C_{p+q} ∩ d^{-1}(F_{p-r} C_{p+q-1}).
SpectralSequencePage page_at(const FilteredComplex& f, int r);

SpectralSequencePage e1_page(const FilteredComplex& f);

// Recompute page.r from f (InconsistentPage on any disagreement with the
// supplied entries or differentials), then return page r+1.
SpectralSequencePage turn_page(const SpectralSequencePage& page, const FilteredComplex& f);

struct ConvergenceReport {
    bool ok = false;
    // witness matrix per (p,q): E_inf generators in the coordinates of the
    // canonical generators of F^p H_{p+q} / F^{p-1} H_{p+q}
    std::map<std::pair<int, int>, Mat> witnesses;
    std::string diagnostic;
};

std::pair<SpectralSequencePage, ConvergenceReport> e_infinity(const FilteredComplex& f);

// Replace an arbitrary chain of maps X(0) -> X(1) -> ... -> X(P) by iterated
// mapping cylinders, producing a valid degreewise-injective filtration whose
// steps are quasi-isomorphic to the originals.
FilteredComplex make_injective(const std::vector<ChainComplex>& steps,
                               const std::vector<ChainMap>& maps);

}  // namespace homalg

#endif
