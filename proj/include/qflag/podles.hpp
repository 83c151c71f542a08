#pragma once

#include "qflag/twist.hpp"

#include <complex>

namespace qflag {

/// One component of an l-block: forms of bidegree (a,b) whose section part has right weight j.
struct Component {
    int a = 0, b = 0;
    int twice_j = 0;
    size_t offset = 0;  // first index inside the block; the block holds 2l+1 copies (left index m)
};

struct SectionBlock {
    int twice_l = 0;
    size_t dim = 0;
    SMatrix gram;  // diagonal Haar inner product
};

struct TruncatedSections {
    int k = 0;
    int twice_lmax = 0;
    std::vector<SectionBlock> blocks;
};

/// degree-0 sections of E_k with l <= lmax
TruncatedSections build_sections(int k, int twice_lmax);

struct ComplexBlock {
    int twice_l = 0;
    std::vector<Component> comps;
    size_t dim = 0;
    SMatrix gram, dbar, del, dbar_adj, del_adj, L, Lambda;
    SMatrix lap_dbar, lap_del, lap_nabla, dirac_dbar;
    /// indices belonging to the anti-holomorphic subcomplex, and to degree 0
    std::vector<size_t> antiholo, degree0;
};

struct TwistedComplex {
    int k = 0;
    int twice_lmax = 0;
    Scalar weight;  // inner-product factor on degree-one forms
    std::vector<ComplexBlock> blocks;
};

TwistedComplex dolbeault_operators(int k, int twice_lmax);
/// theta with nabla^2 = -+theta i L on every block (throws if not constant)
Scalar curvature_scalar(const TwistedComplex& C);

struct BlockSpectrum {
    int twice_l = 0;
    std::vector<double> dbar_antiholo, dbar_all, del_all, nabla_all, dirac_antiholo;
    std::vector<double> dbar_degree0;
    size_t kernel_antiholo = 0;
};

struct Spectrum {
    double q0 = 1;
    std::vector<BlockSpectrum> blocks;
};

/// float mode: Hermitian eigensolves after symmetrising by the diagonal inner product
Spectrum laplace_spectrum(const TwistedComplex& C, const mpq_class& q0);
Spectrum laplace_spectrum(const TwistedComplex& C, double q0);

struct GapReport {
    int k = 0;
    double q0 = 1;
    bool exact = false;
    double theta = 0;
    double min_nonzero = 0;
    int min_twice_l = -1;
    size_t multiplicity_degree0 = 0;
    double dirac_gap = 0;
    bool gap_ok = false, attained = false;
    double residual_akizuki_nakano = 0, residual_anticommutators = 0, residual_nabla = 0, residual_dirac = 0;
    /// exact mode: theta and the lowest nonzero Laplace eigenvalue as exact scalars
    std::string theta_exact, min_exact;
    bool ok = false;
    std::vector<std::string> failures;
};

/// twist k < 0
GapReport verify_gap_and_identities(int k, int twice_lmax, const mpq_class& q0, bool exact = false);

}  // namespace qflag
