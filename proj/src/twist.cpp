#include "qflag/twist.hpp"

#include <cmath>
#include <stdexcept>

namespace qflag {

const char* twist_sign_name(TwistSign s) {
    switch (s) {
        case TwistSign::Positive: return "positive";
        case TwistSign::Negative: return "negative";
        case TwistSign::Flat: return "flat";
    }
    return "?";
}

const char* gap_operator_name(GapOperator op) {
    switch (op) {
        case GapOperator::TwistedAntiholomorphicLaplace: return "twisted-antiholomorphic-laplace";
        case GapOperator::ChernLaplace: return "chern-laplace";
        case GapOperator::TwistedDiracAntiholomorphic: return "twisted-dirac-antiholomorphic";
    }
    return "?";
}

CommutatorReport curvature_commutator(const FiberAlgebra& F, const GradedOperator& L, const GradedOperator& Lambda,
                                      const TwistData& twist) {
    if (twist.sign == TwistSign::Flat) throw std::invalid_argument("flat twist has no curvature scalar");
    // i nabla^2 / theta = i * (-+ i) L = +-L
    Scalar s = twist.sign == TwistSign::Positive ? Scalar(1) : Scalar(-1);
    GradedOperator iN = scaled(Scalar::i() * (-s) * Scalar::i(), L);
    CommutatorReport rep;
    rep.ok = true;
    for (int a = 0; a <= F.n(); ++a)
        for (int b = 0; b <= F.n(); ++b) {
            Bideg d{a, b}, up{a + 1, b + 1}, dn{a - 1, b - 1};
            SMatrix Lam = Lambda.block(F, d), Ld = iN.block(F, d);
            size_t dim = F.basis(a, b).size();
            SMatrix first = Lam.rows() ? iN.block(F, dn) * Lam : SMatrix(dim, dim);
            SMatrix second = Ld.rows() ? Lambda.block(F, up) * Ld : SMatrix(dim, dim);
            CommutatorBlock blk{d, first - second, Scalar(0), false};
            Scalar want = s * Scalar(a + b - F.M());
            blk.scalar = dim ? blk.over_theta(0, 0) : Scalar(0);
            blk.is_scalar = blk.over_theta == blk.scalar * SMatrix::identity(dim);
            if (!blk.is_scalar || !(blk.scalar == want)) {
                rep.ok = false;
                rep.detail = "block (" + std::to_string(a) + "," + std::to_string(b) + ") is not " + want.str() +
                             " times theta";
            }
            rep.blocks.push_back(blk);
        }
    if (rep.ok)
        rep.detail = std::string("[i nabla^2, Lambda] = ") + (twist.sign == TwistSign::Positive ? "+" : "-") +
                     "theta (k-M) on every block";
    return rep;
}

double GapBound::at(const mpq_class& q0) const {
    GaussQ v = radicand.eval(q0);
    double x = v.re.get_d();
    return root ? std::sqrt(x) : x;
}

GapBound gap_bounds(const Scalar& theta, GapOperator op, const Interval& window, bool antiholomorphic_form) {
    if (!theta.is_real()) throw std::invalid_argument("theta must be real");
    if (theta.is_zero() || sign_on_interval(theta, window).sign != Sign::Positive)
        throw std::invalid_argument("theta is not certified positive on the window");
    GapBound g{op, theta, theta, false, "", "", false};
    const std::string t = theta.str();
    switch (op) {
        case GapOperator::TwistedAntiholomorphicLaplace:
            g.expression = t;
            g.domain = "Omega^k (x) F for 1 <= k <= M-1, and Omega^(0,*) (x) F (nonzero eigenvalues)";
            g.attained = antiholomorphic_form;
            break;
        case GapOperator::ChernLaplace:
            g.radicand = Scalar(3) * theta;
            g.expression = g.radicand.str();
            g.domain = "Omega^k (x) F for 1 <= k <= M-1";
            break;
        case GapOperator::TwistedDiracAntiholomorphic:
            g.root = true;
            g.expression = "sqrt(" + t + ")";
            g.domain = "Omega^(0,*) (x) F, absolute value of nonzero eigenvalues";
            g.attained = antiholomorphic_form;
            break;
    }
    return g;
}

TwistData podles_curvature(int k) {
    if (k == 0) return {TwistSign::Flat, Scalar(0)};
    return {k > 0 ? TwistSign::Positive : TwistSign::Negative, quantum_integer(std::abs(k), -2)};
}

namespace {

const std::vector<FlagMetadata>& table() {
    static const std::vector<FlagMetadata> rows = {
        {"grassmannian", "A_n", "alpha_k", "O_q(Gr_{k,n+1})", "quantum Grassmannian", "U_q(sl_k + sl_{n-k+1})",
         "V_{w_1} (x) V_{w_1}", "V_{w_{k-1}} (x) V_{w_{n-k}}", "k(n-k+1)", std::nullopt,
         "spin, for all n in 2Z_{>0}+1", "E_{-(n+1)/2}"},
        {"odd-quadric", "B_n", "alpha_1", "O_q(Q_{2n+1})", "odd quantum quadric", "U_q(so_{2n-1})", "V_{w_1}",
         "V_{w_1}", "2n-1", std::nullopt, "", ""},
        {"lagrangian-grassmannian", "C_n", "alpha_n", "O_q(L_n)", "quantum Lagrangian Grassmannian", "U_q(sl_n)",
         "V_{2w_1}", "V_{2w_{n-1}}", "n(n+1)/2", std::nullopt, "spin, for all n in 2Z_{>0}+1", "E_{-(n+1)/2}"},
        {"even-quadric", "D_n", "alpha_1", "O_q(Q_{2n})", "even quantum quadric", "U_q(so_{2(n-1)})", "V_{w_1}",
         "V_{w_1}", "2(n-1)", std::nullopt, "spin, for all n in Z_{>0}", "E_{-n+1}"},
        {"spinor-variety", "D_n", "alpha_{n-1} or alpha_n", "O_q(S_n)", "quantum spinor variety", "U_q(sl_n)",
         "V_{w_2}", "V_{w_{n-2}}", "n(n-1)/2", std::nullopt, "spin, for all n in Z_{>0}", "E_{-n+1}"},
        {"cayley-plane", "E_6", "alpha_1 or alpha_6", "O_q(OP^2)", "quantum Cayley plane", "U_q(so_10)", "V_{w_6}",
         "V_{w_5}", "16", 16L, "spin", "E_{-6}"},
        {"freudenthal-variety", "E_7", "alpha_7", "O_q(F)", "quantum Freudenthal variety", "U_q(e_6)", "V_{w_1}",
         "V_{w_6}", "27", 27L, "spin", "E_{-9}"},
    };
    return rows;
}

}  // namespace

std::vector<std::string> flag_spaces() {
    std::vector<std::string> out;
    for (auto& r : table()) out.push_back(r.id);
    return out;
}

FlagMetadata flag_metadata(const std::string& id) {
    for (auto& r : table())
        if (r.id == id) return r;
    throw std::invalid_argument("unknown flag manifold: " + id);
}

long flag_dimension(const std::string& id, long n, long k) {
    FlagMetadata m = flag_metadata(id);
    if (m.M) return *m.M;
    if (id == "grassmannian") {
        if (k < 1 || k > n) throw std::invalid_argument("Grassmannian needs 1 <= k <= n");
        return k * (n - k + 1);
    }
    if (id == "odd-quadric") return 2 * n - 1;
    if (id == "lagrangian-grassmannian") return n * (n + 1) / 2;
    if (id == "even-quadric") return 2 * (n - 1);
    if (id == "spinor-variety") return n * (n - 1) / 2;
    throw std::invalid_argument("no dimension rule for " + id);
}

void to_json(nlohmann::json& j, const FlagMetadata& m) {
    j = nlohmann::json{{"id", m.id},
                       {"series", m.series},
                       {"crossed_node", m.crossed_node},
                       {"symbol", m.symbol},
                       {"name", m.name},
                       {"levi_semisimple", m.levi},
                       {"cotangent_01", m.cotangent_01},
                       {"cotangent_10", m.cotangent_10},
                       {"dimension", m.dimension},
                       {"M", m.M ? nlohmann::json(*m.M) : nlohmann::json(nullptr)},
                       {"spin_criterion", m.spin_criterion},
                       {"spin_root", m.spin_root}};
}

void from_json(const nlohmann::json& j, FlagMetadata& m) {
    j.at("id").get_to(m.id);
    j.at("series").get_to(m.series);
    j.at("crossed_node").get_to(m.crossed_node);
    j.at("symbol").get_to(m.symbol);
    j.at("name").get_to(m.name);
    j.at("levi_semisimple").get_to(m.levi);
    j.at("cotangent_01").get_to(m.cotangent_01);
    j.at("cotangent_10").get_to(m.cotangent_10);
    j.at("dimension").get_to(m.dimension);
    m.M = j.at("M").is_null() ? std::nullopt : std::optional<long>(j.at("M").get<long>());
    j.at("spin_criterion").get_to(m.spin_criterion);
    j.at("spin_root").get_to(m.spin_root);
}

}  // namespace qflag
