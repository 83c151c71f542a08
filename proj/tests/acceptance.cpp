#include "qflag/podles.hpp"
#include "qflag/positivity.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qflag;

namespace {

struct Ctx {
    FiberAlgebra F;
    HodgeData h;
    std::map<Bideg, GramMatrix> G;
    GradedOperator Lambda;
    explicit Ctx(int n) : F(FiberAlgebra::build(n)), h(build_hodge(F)), G(all_grams(F, h)) {
        Lambda = dual_lefschetz(F, h.L, G);
    }
};

std::map<int, std::unique_ptr<Ctx>> cache;
Ctx& ctx(int n) {
    auto& p = cache[n];
    if (!p) p = std::make_unique<Ctx>(n);
    return *p;
}

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

const Interval kWide{mpq_class(1, 100), mpq_class(100)};
std::map<int, PositivityCertificate> certificates;

const PositivityCertificate& certificate(int n) {
    auto it = certificates.find(n);
    if (it == certificates.end()) {
        Ctx& c = ctx(n);
        it = certificates.emplace(n, certify_positivity(c.F, c.h, c.G, kWide)).first;
    }
    return it->second;
}

bool dimension_axiom(std::string& note) {
    for (int n = 1; n <= 4; ++n) {
        FiberAlgebra F = FiberAlgebra::build(n);
        if (!F.check_overlaps().ok) return note = "overlaps fail n=" + std::to_string(n), false;
        for (int k = 0; k <= 2 * n; ++k) {
            long want = binom(2 * n, k);
            if (long(F.basis(k).size()) != want) return note = "basis size", false;
            if (k > 0 && long(F.degree_rank(k)) != want) return note = "rank n=" + std::to_string(n), false;
        }
    }
    note = "n = 1..4, all degrees";
    return true;
}

bool sl2_suite(std::string& note) {
    for (int n = 1; n <= 3; ++n) {
        Ctx& c = ctx(n);
        Sl2Report r = verify_sl2(c.F, c.h.L, c.Lambda, c.h.H);
        if (!r.ok) return note = "n=" + std::to_string(n) + ": " + (r.failures.empty() ? "" : r.failures[0]), false;
    }
    note = "residuals identically zero, n <= 3";
    return true;
}

bool hodge_suite(std::string& note) {
    for (int n = 1; n <= 3; ++n) {
        Ctx& c = ctx(n);
        CheckResult s = check_hodge_star(c.F, c.h.star);
        if (!s.ok) return note = s.detail, false;
        for (auto& [d, g] : c.G)
            if (!check_gram(g).ok) return note = "Gram not conjugate symmetric", false;
    }
    note = "*^2, bidegree swap, star map, conjugate symmetry, n <= 3";
    return true;
}

bool orthonormal_at_one(std::string& note) {
    for (int n = 1; n <= 3; ++n)
        for (auto& [d, g] : ctx(n).G) {
            GMatrix v = evaluate(g.mat, 1);
            if (!(v == GMatrix::identity(v.rows())))
                return note = "n=" + std::to_string(n) + " bidegree " + std::to_string(d.first) + "," +
                              std::to_string(d.second),
                       false;
        }
    note = "every Gram block is the identity at q = 1, n <= 3";
    return true;
}

bool positivity(std::string& note) {
    const PositivityCertificate& p1 = certificate(1);
    const PositivityCertificate& p2 = certificate(2);
    bool ok = p1.ok && p2.ok && p1.interval.lo <= mpq_class(1, 2) && p1.interval.hi >= 2 && p2.interval.lo < 1 &&
              p2.interval.hi > 1;
    note = "n=1 (" + p1.interval.lo.get_str() + ", " + p1.interval.hi.get_str() + "), n=2 (" +
           p2.interval.lo.get_str() + ", " + p2.interval.hi.get_str() + ")";
    return ok;
}

bool degree_one_orthogonal(std::string& note) {
    for (int n = 1; n <= 3; ++n)
        for (auto& [d, g] : ctx(n).G) {
            if (d.first + d.second != 1) continue;
            for (size_t i = 0; i < g.mat.rows(); ++i)
                for (size_t j = 0; j < g.mat.cols(); ++j)
                    if (i != j && !g.mat(i, j).is_zero()) return note = "off-diagonal entry", false;
        }
    note = "exact diagonal, n <= 3";
    return true;
}

bool commutator(std::string& note) {
    const Scalar theta = quantum_integer(3, -2);
    for (int n = 1; n <= 3; ++n)
        for (TwistSign s : {TwistSign::Positive, TwistSign::Negative}) {
            Ctx& c = ctx(n);
            CommutatorReport r = curvature_commutator(c.F, c.h.L, c.Lambda, {s, theta});
            if (!r.ok) return note = r.detail, false;
            for (auto& b : r.blocks) {
                int k = b.bideg.first + b.bideg.second;
                Scalar want = Scalar(s == TwistSign::Positive ? k - n : n - k);
                if (!(b.over_theta == want * SMatrix::identity(b.over_theta.rows())))
                    return note = "block not +-(k-M)", false;
            }
        }
    note = "both signs, theta = 1 + q^-2 + q^-4, n <= 3";
    return true;
}

bool no_invariants(std::string& note) {
    for (int n = 1; n <= 4; ++n) {
        FiberAlgebra F = FiberAlgebra::build(n);
        if (invariant_vectors(F.antiholo_module(), F.levi_roots()).cols() != 0) return note = "invariant found", false;
    }
    note = "zero invariant space in degree (0,1), n = 1..4";
    return true;
}

bool hard_lefschetz(std::string& note) {
    for (int n = 1; n <= 3; ++n) {
        Ctx& c = ctx(n);
        const PositivityCertificate& P = certificate(n);
        if (!P.ok) return note = "no certificate for n=" + std::to_string(n), false;
        for (auto& d : c.h.iso.degrees) {
            if (d.det.is_zero()) return note = "zero determinant", false;
            Sign s = sign_on_interval(d.det, P.interval).sign;
            if (s != Sign::Positive && s != Sign::Negative) return note = "determinant vanishes on the interval", false;
        }
    }
    note = "det L^(M-k) nonzero, constant sign on the certified interval, n <= 3";
    return true;
}

bool podles_gap(std::string& note, bool residuals) {
    double worst_gap = 0, worst_res = 0;
    for (int k : {1, 2, 3, 5})
        for (mpq_class q : {mpq_class(1, 2), mpq_class(9, 10), mpq_class(1), mpq_class(11, 10), mpq_class(2)}) {
            GapReport f = verify_gap_and_identities(-k, k + 12, q);
            GapReport x = verify_gap_and_identities(-k, k + 12, q, true);
            std::string tag = "k=" + std::to_string(k) + " q=" + q.get_str() + ": ";
            if (residuals) {
                double r = std::max({f.residual_akizuki_nakano, f.residual_anticommutators, f.residual_nabla});
                worst_res = std::max(worst_res, r);
                if (r > 1e-10) return note = tag + "float residual " + std::to_string(r), false;
                if (x.residual_akizuki_nakano != 0 || x.residual_anticommutators != 0 || x.residual_nabla != 0)
                    return note = tag + "exact residual nonzero", false;
            } else {
                double rel = std::abs(f.min_nonzero - f.theta) / f.theta;
                worst_gap = std::max(worst_gap, rel);
                if (!f.ok || rel > 1e-9) return note = tag + (f.failures.empty() ? "gap" : f.failures[0]), false;
                if (!x.ok || x.min_exact != x.theta_exact) return note = tag + "exact gap", false;
                if (f.multiplicity_degree0 != size_t(k + 1)) return note = tag + "multiplicity", false;
                if (std::abs(f.dirac_gap - std::sqrt(f.theta)) > 1e-9 * std::sqrt(f.theta))
                    return note = tag + "Dirac gap", false;
            }
        }
    std::ostringstream os;
    if (residuals)
        os << "20 configurations, worst float residual " << worst_res << ", exact residuals zero";
    else
        os << "20 configurations, worst relative gap error " << worst_gap << ", exact gap (k)_{q^-2}";
    note = os.str();
    return true;
}

bool metadata(std::string& note) {
    std::ifstream in(std::string(QFLAG_GOLDEN_DIR) + "/flag_metadata.json");
    if (!in) return note = "golden file missing", false;
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::json ours = nlohmann::json::array();
    for (auto& id : flag_spaces()) ours.push_back(flag_metadata(id));
    if (ours.dump(2) + "\n" != ss.str()) return note = "rows differ from golden file", false;
    if (flag_metadata("cayley-plane").M != 16) return note = "Cayley plane M", false;
    if (flag_metadata("spinor-variety").spin_root != "E_{-n+1}") return note = "spinor spin root", false;
    note = std::to_string(ours.size()) + " rows byte-identical to the golden file";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> run;
    };
    std::vector<Criterion> all = {
        {"dimension axiom", dimension_axiom},
        {"sl2 relations", sl2_suite},
        {"Hodge suite", hodge_suite},
        {"orthonormality at q = 1", orthonormal_at_one},
        {"positivity certificate", positivity},
        {"degree-1 orthogonality", degree_one_orthogonal},
        {"curvature commutator", commutator},
        {"no trivial subcomodule", no_invariants},
        {"hard Lefschetz", hard_lefschetz},
        {"Podles gap", [](std::string& s) { return podles_gap(s, false); }},
        {"Podles identity residuals", [](std::string& s) { return podles_gap(s, true); }},
        {"metadata fidelity", metadata},
    };
    int failed = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = all[i].run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %-28s %7.2fs  %s\n", ok ? "PASS" : "FAIL", i + 1, all[i].name, s, note.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    std::printf("%d of %zu criteria pass\n", int(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
