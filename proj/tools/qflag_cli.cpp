#include "qflag/podles.hpp"
#include "qflag/positivity.hpp"

#include "qflag_schema.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <thread>

using namespace qflag;
using nlohmann::json;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QValue {
    mpq_class value;
    bool is_float = false;
    std::string text;
};

QValue parse_q(std::string s) {
    if (s.rfind("q=", 0) == 0) s = s.substr(2);
    QValue v{0, false, s};
    try {
        if (s.find_first_of(".eE") != std::string::npos) {
            v.value = mpq_class(std::stod(s));
            v.is_float = true;
        } else {
            v.value = mpq_class(s);
            v.value.canonicalize();
        }
    } catch (const std::exception&) {
        throw Usage("cannot parse q value '" + s + "'");
    }
    if (v.value <= 0) throw Usage("q must be positive");
    return v;
}

mpq_class parse_rational(const std::string& s) {
    try {
        mpq_class r(s);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw Usage("cannot parse rational '" + s + "'");
    }
}

Interval parse_window(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw Usage("window must be a,b");
    Interval w{parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
    if (!(w.lo > 0 && w.lo < w.hi)) throw Usage("window must satisfy 0 < a < b");
    return w;
}

Bideg parse_bideg(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw Usage("bidegree must be a,b");
    try {
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Usage("cannot parse bidegree '" + s + "'");
    }
}

json matrix_json(const SMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
        rows.push_back(r);
    }
    return rows;
}

json matrix_json(const GMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
        rows.push_back(r);
    }
    return rows;
}

std::string bideg_key(Bideg d) { return std::to_string(d.first) + "," + std::to_string(d.second); }
json window_json(const Interval& w) { return json::array({w.lo.get_str(), w.hi.get_str()}); }

json form_json(const FiberForm& x, int n) {
    json out = json::object();
    for (auto& [w, c] : x.terms) out[word_text(w, n)] = c.str();
    return out;
}

int workers() {
    const char* env = std::getenv("QFLAG_WORKERS");
    if (!env) return 1;
    int w = std::atoi(env);
    return w >= 1 ? w : 1;
}

struct Context {
    json config = json::object();
    json verdicts = json::object();
    json result = json::object();
    json timings = json::object();
    bool with_timings = false;
    std::vector<std::string> summary;

    void verdict(const std::string& name, bool ok) {
        verdicts[name] = ok;
        summary.push_back((ok ? "PASS " : "FAIL ") + name);
    }
    template <class F>
    auto timed(const std::string& name, F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = f();
        timings[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
};

void set_q(Context& c, const QValue& q, bool exact_requested) {
    c.config["q"] = q.is_float ? q.text : q.value.get_str();
    c.config["mode"] = (q.is_float || !exact_requested) ? "float" : "exact";
    if (q.is_float)
        c.config["precision_note"] = "q given as a float; stored as the nearest double " + q.value.get_str() +
                                     ", results are floating point";
}

// subcommands

void cmd_fiber(Context& c, int n, bool mirror, bool dump) {
    c.config["n"] = n;
    c.config["mirror"] = mirror;
    FiberAlgebra F = FiberAlgebra::build(n, {mirror});
    CheckResult ov = F.check_overlaps();
    c.verdict("overlaps_resolve", ov.ok);
    json dims = json::array();
    bool dims_ok = true;
    for (int k = 0; k <= 2 * n; ++k) {
        size_t d = F.basis(k).size();
        dims.push_back(d);
        if (k > 0 && F.degree_rank(k) != d) dims_ok = false;
    }
    c.result["dimensions"] = dims;
    c.verdict("dimensions", dims_ok && ov.ok);
    c.verdict("no_invariants_01", invariant_vectors(F.antiholo_module(), F.levi_roots()).cols() == 0);
    c.result["kappa"] = matrix_json(F.kappa_vector());
    if (dump) {
        json rel = json::array();
        for (int a = 0; a < 2 * n; ++a)
            for (int b = 0; b < 2 * n; ++b) rel.push_back(F.relation_text(a, b));
        c.result["relations"] = rel;
        c.result["cross_matrix"] = matrix_json(F.cross());
        OracleResult o = rmatrix_cross_oracle(F);
        c.result["rmatrix_oracle"] = {{"agrees", o.agrees}, {"differences", o.differences}};
    }
}

json graded_json(const GradedOperator& op) {
    json out = json::object();
    for (auto& [d, b] : op.blocks)
        out[bideg_key(d)] = {{"target", bideg_key(b.dst)}, {"matrix", matrix_json(b.mat)}};
    return out;
}

void cmd_hodge(Context& c, int n, bool emit) {
    c.config["n"] = n;
    FiberAlgebra F = FiberAlgebra::build(n);
    HodgeData h = build_hodge(F);
    c.result["kappa"] = form_json(h.kappa, n);
    json dets = json::array();
    for (auto& d : h.iso.degrees) dets.push_back({{"k", d.k}, {"det", d.det.str()}});
    c.result["lefschetz_determinants"] = dets;
    c.verdict("lefschetz_iso", h.iso.holds);
    c.verdict("hodge_star", check_hodge_star(F, h.star).ok);
    if (emit) {
        c.result["L"] = graded_json(h.L);
        c.result["H"] = graded_json(h.H);
        c.result["star"] = graded_json(h.star);
    }
}

void cmd_gram(Context& c, int n, Bideg d, const std::optional<QValue>& at) {
    c.config["n"] = n;
    c.config["bidegree"] = bideg_key(d);
    if (d.first < 0 || d.second < 0 || d.first > n || d.second > n) throw Usage("bidegree out of range");
    FiberAlgebra F = FiberAlgebra::build(n);
    HodgeData h = build_hodge(F);
    GramMatrix G = gram(F, h, d);
    c.verdict("gram_hermitian", check_gram(G).ok);
    json basis = json::array();
    for (const Word& w : F.basis(d.first, d.second)) basis.push_back(word_text(w, n));
    c.result["basis"] = basis;
    c.result["gram"] = matrix_json(G.mat);
    if (at) {
        set_q(c, *at, true);
        GMatrix v = evaluate(G.mat, at->value);
        c.result["gram_at_q"] = matrix_json(v);
        if (at->value == 1) c.verdict("orthonormal_at_1", v == GMatrix::identity(v.rows()));
    }
}

json certificate_json(const PositivityCertificate& P) {
    json minors = json::array();
    for (auto& m : P.minors)
        minors.push_back({{"bidegree", bideg_key(m.bideg)}, {"order", m.order}, {"minor", m.minor.str()},
                          {"sign", sign_name(m.report.sign)}});
    json crit = json::array();
    for (auto& i : P.critical) crit.push_back(window_json(i));
    return {{"window", window_json(P.window)}, {"interval", window_json(P.interval)}, {"minors", minors},
            {"critical", crit}, {"detail", P.detail}};
}

void cmd_certify(Context& c, int n, const Interval& w) {
    c.config["n"] = n;
    c.config["window"] = window_json(w);
    if (!w.contains(1)) throw Usage("window must contain 1");
    PositivityCertificate P = c.timed("certify", [&] { return certify_positivity(n, w); });
    c.result["certificate"] = certificate_json(P);
    c.verdict("positivity", P.ok);
    json ex = json::array();
    for (auto& e : exclusion_set(n, w)) {
        json roots = json::array();
        for (auto& r : e.roots) roots.push_back(window_json(r));
        ex.push_back({{"k", e.k}, {"det", e.det.str()}, {"roots", roots}});
    }
    c.result["exclusion_set"] = ex;
}

void cmd_gap(Context& c, const std::string& space, int k, const Interval& w, const std::optional<QValue>& at) {
    if (space != "podles") throw Usage("gap bounds are available for --space podles");
    if (k == 0) throw Usage("k must be nonzero");
    c.config["k"] = k;
    c.config["window"] = window_json(w);
    TwistData t = podles_curvature(k);
    c.result["theta"] = t.theta.str();
    c.result["sign"] = twist_sign_name(t.sign);
    if (at) set_q(c, *at, true);
    json bounds = json::array();
    for (GapOperator op : {GapOperator::TwistedAntiholomorphicLaplace, GapOperator::ChernLaplace,
                           GapOperator::TwistedDiracAntiholomorphic}) {
        GapBound b = gap_bounds(t.theta, op, w, k < 0);
        json j = {{"operator", gap_operator_name(op)}, {"radicand", b.radicand.str()}, {"root", b.root},
                  {"expression", b.expression}, {"domain", b.domain}, {"attained", b.attained}};
        if (at) j["value"] = b.at(at->value);
        bounds.push_back(j);
    }
    c.result["bounds"] = bounds;
    c.verdict("theta_positive", sign_on_interval(t.theta, w).sign == Sign::Positive);
}

void cmd_meta(Context& c, const std::string& space) {
    if (space == "all") {
        json rows = json::array();
        for (auto& id : flag_spaces()) rows.push_back(flag_metadata(id));
        c.result["spaces"] = rows;
    } else {
        try {
            c.result["space"] = flag_metadata(space);
        } catch (const std::invalid_argument& e) {
            throw Usage(e.what());
        }
    }
}

json gap_json(const GapReport& r) {
    json j = {{"k", r.k},
              {"theta", r.theta},
              {"min_nonzero", r.min_nonzero},
              {"attained_at_twice_l", r.min_twice_l},
              {"multiplicity_degree0", r.multiplicity_degree0},
              {"dirac_gap", r.dirac_gap},
              {"residual_akizuki_nakano", r.residual_akizuki_nakano},
              {"residual_anticommutators", r.residual_anticommutators},
              {"residual_laplace_sum", r.residual_nabla},
              {"residual_dirac_square", r.residual_dirac},
              {"failures", r.failures}};
    if (r.exact) {
        j["theta_exact"] = r.theta_exact;
        j["min_exact"] = r.min_exact;
    }
    return j;
}

int twice_cutoff(const std::string& s) {
    mpq_class l = parse_rational(s);
    mpq_class t = 2 * l;
    if (t.get_den() != 1 || t < 0) throw Usage("cutoff must be a nonnegative half-integer");
    return static_cast<int>(t.get_num().get_si());
}

void cmd_podles(Context& c, int k, const std::string& cutoff, const QValue& q, bool exact) {
    int tl = twice_cutoff(cutoff);
    c.config["k"] = k;
    c.config["cutoff"] = cutoff;
    set_q(c, q, exact);
    bool ex = exact && !q.is_float;
    TwistedComplex C = dolbeault_operators(k, tl);
    c.result["curvature"] = curvature_scalar(C).str();
    if (k < 0) {
        GapReport r = c.timed("podles", [&] { return verify_gap_and_identities(k, tl, q.value, ex); });
        c.result["gap"] = gap_json(r);
        c.verdict("gap", r.ok);
    }
    json blocks = json::array();
    for (auto& b : laplace_spectrum(C, q.value).blocks) {
        blocks.push_back({{"twice_l", b.twice_l},
                          {"dbar_antiholomorphic", b.dbar_antiholo},
                          {"harmonic_antiholomorphic", b.kernel_antiholo}});
    }
    c.result["blocks"] = blocks;
}

void cmd_verify_all(Context& c, int n, const Interval& w) {
    c.config["n"] = n;
    c.config["window"] = window_json(w);
    if (!w.contains(1)) throw Usage("window must contain 1");
    c.config["workers"] = workers();
    FiberAlgebra F = FiberAlgebra::build(n);
    c.verdict("fiber_dimensions", F.check_overlaps().ok);
    c.verdict("no_invariants_01", invariant_vectors(F.antiholo_module(), F.levi_roots()).cols() == 0);
    HodgeData h = c.timed("hodge", [&] { return build_hodge(F); });
    c.verdict("lefschetz_iso", h.iso.holds);
    c.verdict("hodge_star", check_hodge_star(F, h.star).ok);
    auto grams = c.timed("gram", [&] { return all_grams(F, h); });
    bool herm = true, ortho = true, diag1 = true;
    for (auto& [d, G] : grams) {
        herm = herm && check_gram(G).ok;
        GMatrix v = evaluate(G.mat, 1);
        ortho = ortho && v == GMatrix::identity(v.rows());
        if (d.first + d.second == 1)
            for (size_t i = 0; i < G.mat.rows(); ++i)
                for (size_t j = 0; j < G.mat.cols(); ++j)
                    if (i != j && !G.mat(i, j).is_zero()) diag1 = false;
    }
    c.verdict("gram_hermitian", herm);
    c.verdict("orthonormal_at_1", ortho);
    c.verdict("degree_one_diagonal", diag1);
    GradedOperator Lam = dual_lefschetz(F, h.L, grams);
    Sl2Report s = c.timed("sl2", [&] { return verify_sl2(F, h.L, Lam, h.H); });
    c.verdict("sl2", s.ok);
    PositivityCertificate P = c.timed("certify", [&] { return certify_positivity(F, h, grams, w); });
    c.result["certificate"] = certificate_json(P);
    c.verdict("positivity", P.ok);
    bool comm = true;
    for (TwistSign sg : {TwistSign::Positive, TwistSign::Negative})
        comm = comm && curvature_commutator(F, h.L, Lam, {sg, quantum_integer(2, -2)}).ok;
    c.verdict("curvature_commutator", comm);

    // Podles gap grid, q values inside the window
    std::vector<std::pair<int, mpq_class>> jobs;
    for (int k : {1, 2, 3, 5})
        for (mpq_class q : {mpq_class(1, 2), mpq_class(9, 10), mpq_class(1), mpq_class(11, 10), mpq_class(2)})
            if (w.lo <= q && q <= w.hi) jobs.push_back({k, q});
    std::vector<GapReport> reports(jobs.size());
    auto t0 = std::chrono::steady_clock::now();
    {
        std::vector<std::thread> pool;
        // one twist per worker at a time so the operators of a twist are built once
        const std::vector<int> ks = {1, 2, 3, 5};
        const size_t nw = std::min<size_t>(workers(), ks.size());
        for (size_t t = 0; t < nw; ++t)
            pool.emplace_back([&, t] {
                for (size_t a = t; a < ks.size(); a += nw)
                    for (size_t i = 0; i < jobs.size(); ++i)
                        if (jobs[i].first == ks[a])
                            reports[i] = verify_gap_and_identities(-ks[a], ks[a] + 12, jobs[i].second);
            });
        for (auto& th : pool) th.join();
    }
    c.timings["podles"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json gaps = json::array();
    bool gap_ok = true;
    for (size_t i = 0; i < jobs.size(); ++i) {
        json g = gap_json(reports[i]);
        g["q"] = jobs[i].second.get_str();
        gaps.push_back(g);
        gap_ok = gap_ok && reports[i].ok;
    }
    c.result["podles_gap"] = gaps;
    c.verdict("podles_gap", gap_ok);
}

void cmd_dump_rep(Context& c, int n, const std::string& kind) {
    c.config["n"] = n;
    int N = n + 1;
    ModuleRep V = vector_rep(N);
    if (kind == "dual") V = dual_rep(V);
    else if (kind != "vector") throw Usage("--kind must be vector or dual");
    json E = json::array(), Fm = json::array(), K = json::array();
    for (auto& m : V.E) E.push_back(matrix_json(m));
    for (auto& m : V.F) Fm.push_back(matrix_json(m));
    for (auto& m : V.K) K.push_back(matrix_json(m));
    c.result["E"] = E;
    c.result["F"] = Fm;
    c.result["K"] = K;
    c.result["weights"] = V.weights;
    BraidMatrix R = braiding(V, V);
    c.result["braiding"] = {{"source", R.source}, {"target", R.target}, {"matrix", matrix_json(R.mat)}};
    c.verdict("relations", check_relations(V, all_roots(N)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of quantum flag manifold Kahler data"};
    app.require_subcommand(0, 1);
    bool schema = false, with_timings = false;
    app.add_flag("--schema", schema, "print the report JSON schema");
    app.add_flag("--timings", with_timings, "include timings in the report");

    int n = 1, k = -1;
    bool mirror = false, dump = false, emit = false, exact = false;
    std::string window = "1/2,2", bideg, at, space, cutoff, qtext = "1", kind = "vector";

    auto* fiber = app.add_subcommand("fiber", "fiber exterior algebra");
    fiber->add_option("--n", n)->required()->check(CLI::Range(1, 6));
    fiber->add_flag("--mirror", mirror);
    fiber->add_flag("--dump-relations", dump);

    auto* hodge = app.add_subcommand("hodge", "Kahler form, Lefschetz and Hodge operators");
    hodge->add_option("--n", n)->required()->check(CLI::Range(1, 5));
    hodge->add_flag("--emit", emit);

    auto* gramc = app.add_subcommand("gram", "Gram matrix of the Hodge metric");
    gramc->add_option("--n", n)->required()->check(CLI::Range(1, 4));
    gramc->add_option("--bidegree", bideg)->required();
    gramc->add_option("--at", at, "q=p/r");

    auto* cert = app.add_subcommand("certify", "positivity certificate around q = 1");
    cert->add_option("--n", n)->required()->check(CLI::Range(1, 4));
    cert->add_option("--window", window);

    auto* gap = app.add_subcommand("gap", "spectral gap bounds");
    gap->add_option("--space", space)->required();
    gap->add_option("--k", k)->required();
    gap->add_option("--window", window);
    gap->add_option("--at", at);

    auto* meta = app.add_subcommand("meta", "irreducible flag manifold metadata");
    meta->add_option("--space", space)->required();

    auto* pod = app.add_subcommand("podles", "twisted Dolbeault complex on the Podles sphere");
    pod->add_option("--k", k)->required();
    pod->add_option("--cutoff", cutoff)->required();
    pod->add_option("--q", qtext);
    pod->add_flag("--exact", exact);

    auto* all = app.add_subcommand("verify-all", "every verification for one n");
    all->add_option("--n", n)->required()->check(CLI::Range(1, 3));
    all->add_option("--window", window);

    auto* rep = app.add_subcommand("dump-rep", "vector representation and braiding");
    rep->add_option("--n", n)->required()->check(CLI::Range(1, 6));
    rep->add_option("--kind", kind);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (schema) {
        std::cout << qflag_report_schema;
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
    }

    Context c;
    c.with_timings = with_timings;
    json command = json::array();
    for (int i = 1; i < argc; ++i) command.push_back(argv[i]);
    try {
        if (*fiber) cmd_fiber(c, n, mirror, dump);
        if (*hodge) cmd_hodge(c, n, emit);
        if (*gramc) cmd_gram(c, n, parse_bideg(bideg), at.empty() ? std::nullopt : std::optional(parse_q(at)));
        if (*cert) cmd_certify(c, n, parse_window(window));
        if (*gap) cmd_gap(c, space, k, parse_window(window), at.empty() ? std::nullopt : std::optional(parse_q(at)));
        if (*meta) cmd_meta(c, space);
        if (*pod) cmd_podles(c, k, cutoff, parse_q(qtext), exact);
        if (*all) cmd_verify_all(c, n, parse_window(window));
        if (*rep) cmd_dump_rep(c, n, kind);
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    bool ok = true;
    for (auto& [name, v] : c.verdicts.items()) ok = ok && v.get<bool>();
    json report = {{"schema_version", "1.0.0"}, {"command", command}, {"config", c.config},
                   {"ok", ok},                   {"verdicts", c.verdicts}, {"result", c.result}};
    if (with_timings) report["timings_ms"] = c.timings;
    std::cout << report.dump(2) << "\n";
    for (auto& s : c.summary) std::cerr << s << "\n";
    std::cerr << (ok ? "all verdicts pass" : "verification failed") << "\n";
    return ok ? 0 : 1;
}
