#include "qhsusy/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <thread>

#include "qhsusy/susy_extension.hpp"

namespace qhsusy {

namespace {

constexpr std::size_t kSpectrumLevels = 6;
constexpr double kClusterTolerance = 1e-8;  // times Omega

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct Shared {
    const RunConfig& cfg;
    SwansonParams params;
    Realization real;
    TruncatedOperator rel_proj;
    TruncatedOperator low_proj;
    TruncatedOperator H;

    explicit Shared(const RunConfig& c)
        : cfg(c),
          params(c.params()),
          real(build_realization(c.realization)),
          rel_proj(relations_projector(c.realization, real.gens.layout, c.margin)),
          low_proj(low_lying_projector(c.realization, real.gens.layout)),
          H(build_H(real.gens, params)) {}

    bool has_hermitian_charges() const { return cfg.realization.kind != RealizationKind::SpinOrbit; }
    std::size_t boson_modes() const { return real.bosons.size(); }
};

/// Quantities at one grid point, built on first use.
class PointEval {
public:
    PointEval(const Shared& s, double z) : s_(s), z_(z) {}

    // MetricUndefined / NonPositive propagate to the caller.
    void prepare() {
        mp_ = epsilon_of(s_.params, z_);
        ep_ = mu_nu(s_.params, z_);
    }

    const MetricParams& mp() const { return *mp_; }
    const EquivParams& ep() const { return *ep_; }

    const MetricOperators& metric() {
        if (!metric_) metric_ = metric_from_params(s_.real.gens, *mp_);
        return *metric_;
    }
    const SuperchargeCoeffs& coeffs() {
        if (!coeffs_) coeffs_ = supercharge_coeffs(s_.params, *mp_, *ep_);
        return *coeffs_;
    }
    const SuperchargePair& pseudo() {
        if (!pseudo_) pseudo_ = pseudo_supercharges(s_.real.gens, coeffs());
        return *pseudo_;
    }
    const TruncatedOperator& HS() {
        if (!HS_) HS_ = build_HS(s_.real.gens, s_.params);
        return *HS_;
    }
    const TruncatedOperator& h() {
        if (!h_) h_ = build_h(s_.real.gens, *ep_, s_.params.omega);
        return *h_;
    }
    const TruncatedOperator& hS() {
        if (!hS_) hS_ = build_hS(s_.real.gens, s_.params, *ep_);
        return *hS_;
    }
    const std::vector<ModePair>& tilde() {
        if (!tilde_) {
            tilde_.emplace();
            for (const auto& b : s_.real.bosons) {
                tilde_->push_back(tilde_mode(b.annihilator, b.creator, *ep_, s_.params.omega));
            }
        }
        return *tilde_;
    }
    // Q = sqrt(2 Omega) sum_i a~^dag_i b_i.
    const SuperchargePair& hermitian() {
        if (!herm_) {
            const auto& modes = tilde();
            std::optional<SuperchargePair> acc;
            for (std::size_t i = 0; i < modes.size(); ++i) {
                auto q = hermitian_supercharges(modes[i].creator, s_.real.fermions[i].annihilator, s_.params.Omega);
                if (!acc) {
                    acc = std::move(q);
                } else {
                    acc->charge = acc->charge + q.charge;
                    acc->partner = acc->partner + q.partner;
                }
            }
            herm_ = std::move(acc);
        }
        return *herm_;
    }
    const ReportFragment& pseudo_fragment() {
        if (!pseudo_fragment_) {
            PseudoSusyTolerances tol{s_.cfg.tolerance("nilpotency"), s_.cfg.tolerance("pseudo_susy")};
            pseudo_fragment_ = verify_pseudo_susy(pseudo(), HS(), metric(), s_.real.gens, coeffs(), s_.low_proj, tol);
        }
        return *pseudo_fragment_;
    }

private:
    const Shared& s_;
    double z_;
    std::optional<MetricParams> mp_;
    std::optional<EquivParams> ep_;
    std::optional<MetricOperators> metric_;
    std::optional<SuperchargeCoeffs> coeffs_;
    std::optional<SuperchargePair> pseudo_;
    std::optional<TruncatedOperator> HS_, h_, hS_;
    std::optional<std::vector<ModePair>> tilde_;
    std::optional<SuperchargePair> herm_;
    std::optional<ReportFragment> pseudo_fragment_;
};

void finalize(ReportEntry& e) {
    if (e.status == EntryStatus::MetricUndefined || e.status == EntryStatus::Skipped) return;
    if (e.details.empty()) {
        e.status = EntryStatus::Skipped;
        return;
    }
    e.residual = max_residual(e.details);
    e.status = all_pass(e.details) ? EntryStatus::Pass : EntryStatus::Fail;
}

ReportEntry skipped(const std::string& check, std::optional<double> z, double tol, std::string note) {
    ReportEntry e;
    e.check = check;
    e.z = z;
    e.tolerance = tol;
    e.status = EntryStatus::Skipped;
    e.note = std::move(note);
    return e;
}

bool is_nilpotency_row(const CheckResult& r) {
    return r.name.size() >= 6 && r.name.compare(r.name.size() - 6, 6, "^2 = 0") == 0;
}

std::string mode_suffix(std::size_t i, std::size_t n) {
    return n > 1 ? " [mode " + std::to_string(i) + "]" : "";
}

// Level k of h: (k + n/2) Omega with degeneracy C(k+n-1, n-1) times the non-boson dimension.
ReportFragment spectrum_h_details(const Shared& s, const TruncatedOperator& h, double tol) {
    const RealVector values = num::eigvals_hermitian(h.matrix);
    const std::size_t n = s.boson_modes();
    std::size_t boson_dim = 1;
    for (auto i : s.real.gens.layout.boson_indices()) boson_dim *= s.real.gens.layout.factor_dim(i);
    const std::size_t other = s.real.gens.layout.dimension() / boson_dim;
    ReportFragment out;
    std::size_t offset = 0;
    for (std::size_t k = 0; k < kSpectrumLevels; ++k) {
        const double predicted = (static_cast<double>(k) + 0.5 * static_cast<double>(n)) * s.params.Omega;
        const std::size_t mult = binomial(k + n - 1, n - 1) * other;
        double worst = 0.0;
        if (offset + mult > static_cast<std::size_t>(values.size())) {
            worst = std::numeric_limits<double>::infinity();
        } else {
            for (std::size_t m = offset; m < offset + mult; ++m) {
                worst = std::max(worst, std::abs(values(static_cast<Eigen::Index>(m)) - predicted) / predicted);
            }
        }
        out.push_back(make_result("E_" + std::to_string(k) + " = (" + std::to_string(k) + " + n/2) Omega", worst, tol));
        offset += mult;
    }
    return out;
}

ReportFragment spectrum_hS_details(const Shared& s, const TruncatedOperator& hS, double tol) {
    const RealVector values = num::eigvals_hermitian(hS.matrix);
    const double Om = s.params.Omega;
    const auto clusters = cluster_eigenvalues(values, kClusterTolerance * Om);
    ReportFragment out;
    for (std::size_t n = 0; n < kSpectrumLevels; ++n) {
        const std::string label = "level " + std::to_string(n);
        if (n >= clusters.size()) {
            out.push_back(make_result(label + " value", std::numeric_limits<double>::infinity(), tol));
            continue;
        }
        const double predicted = static_cast<double>(n) * Om;
        out.push_back(make_result(label + " value", std::abs(clusters[n].value - predicted) / (std::max<double>(n, 1) * Om), tol));
        const auto expected = predicted_hS_multiplicity(s.boson_modes(), n);
        out.push_back(make_result(label + " multiplicity " + std::to_string(clusters[n].multiplicity) + " vs " +
                                      std::to_string(expected),
                                  std::abs(static_cast<double>(clusters[n].multiplicity) - static_cast<double>(expected)),
                                  0.0));
    }
    return out;
}

// -1, 0 or 1 when z sits on a closed-form case (to grid rounding), 2 otherwise.
int special_case_of(double z) {
    for (int c : {-1, 0, 1}) {
        if (std::abs(z - c) <= 1e-12) return c;
    }
    return 2;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ReportEntry z_independent_entry(const Shared& s, const std::string& check) {
    const double tol = s.cfg.tolerance(check);
    ReportEntry e;
    e.check = check;
    e.tolerance = tol;
    if (check == "relations") {
        e.details = check_relations(s.real.gens, relation_table_for(s.real.gens), s.rel_proj, tol);
    } else if (check == "hermiticity") {
        e.details = check_hermiticity(s.real.gens, s.rel_proj, tol);
    } else if (check == "limits") {
        for (int sign : {1, -1}) {
            const double edge = sign * (1.0 - 1e-6);
            const std::string tag = sign > 0 ? "z -> 1" : "z -> -1";
            try {
                const auto limit = mu_nu_endpoint_limit(s.params, sign);
                const auto near = mu_nu(s.params, edge);
                const auto eps_end = epsilon_of(s.params, sign);
                const auto eps_near = epsilon_of(s.params, edge);
                e.details.push_back(make_result("epsilon " + tag, rel_diff(eps_near.epsilon, eps_end.epsilon), tol));
                e.details.push_back(make_result("mu " + tag, rel_diff(near.mu, limit.value.mu), tol));
                e.details.push_back(make_result("nu " + tag, rel_diff(near.nu, limit.value.nu), tol));
            } catch (const MetricUndefined& err) {
                e.note += (e.note.empty() ? "" : "; ") + tag + ": " + err.what();
            } catch (const NonPositive& err) {
                e.note += (e.note.empty() ? "" : "; ") + tag + ": " + err.what();
            }
        }
        if (e.details.empty()) e.status = EntryStatus::MetricUndefined;
    }
    finalize(e);
    return e;
}

ReportEntry point_entry(const Shared& s, PointEval& pt, const std::string& check, double z) {
    const double tol = s.cfg.tolerance(check);
    const auto kind = s.cfg.realization.kind;
    ReportEntry e;
    e.check = check;
    e.z = z;
    e.tolerance = tol;
    const auto& proj = s.low_proj;

    if (check == "coeff_identities") {
        const auto r = closure_residuals(pt.coeffs(), s.params);
        e.details = {make_result("sigma varphi + tau chi = 4 omega", r.sum, tol),
                     make_result("sigma varphi - tau chi = 4 Omega", r.difference, tol),
                     make_result("sigma chi = 4 beta", r.sigma_chi, tol),
                     make_result("tau varphi = 4 alpha", r.tau_varphi, tol)};
    } else if (check == "special_cases") {
        const int case_z = special_case_of(z);
        if (case_z == 2) return skipped(check, z, tol, "closed forms exist only at z = -1, 0, 1");
        SpecialCaseCoeffs sc;
        try {
            sc = special_case_coeffs(s.params, case_z);
        } catch (const DomainError& err) {
            return skipped(check, z, tol, err.what());
        }
        const auto& g = pt.coeffs();
        e.details = {make_result("sigma", rel_diff(g.sigma, sc.coeffs.sigma), tol),
                     make_result("tau", rel_diff(g.tau, sc.coeffs.tau), tol),
                     make_result("varphi", rel_diff(g.varphi, sc.coeffs.varphi), tol),
                     make_result("chi", rel_diff(g.chi, sc.coeffs.chi), tol)};
        if (case_z == 0) {
            const auto gx = gamma_xp_coefficients(s.params);
            const auto xp = xp_coefficients(g, s.params.omega);
            const double gp = *sc.gamma_plus;
            const double gm = *sc.gamma_minus;
            e.details.push_back(make_result("gamma+^2 - gamma-^2 = 1", std::abs(gp * gp - gm * gm - 1.0), tol));
            e.details.push_back(make_result("x coefficient of Qcal (gamma form)", rel_diff(xp.A, gx.A), tol));
            e.details.push_back(make_result("p coefficient of Qcal (gamma form)", rel_diff(xp.B, gx.B), tol));
            e.details.push_back(make_result("x coefficient of Qcal# (gamma form)", rel_diff(xp.C, gx.C), tol));
            e.details.push_back(make_result("p coefficient of Qcal# (gamma form)", rel_diff(xp.D, gx.D), tol));
        }
    } else if (check == "spectrum_h") {
        e.details = spectrum_h_details(s, pt.h(), tol);
    } else if (check == "spectrum_hS") {
        if (kind == RealizationKind::SpinOrbit) {
            return skipped(check, z, tol, "no closed-form h_S degeneracy for the spin-orbit realization");
        }
        e.details = spectrum_hS_details(s, pt.hS(), tol);
    } else if (check == "quasi_hermiticity") {
        e.details = verify_quasi_hermiticity(s.H, pt.metric(), proj, tol);
    } else if (check == "intertwining") {
        e.details = verify_equivalent_hermitian(pt.h(), s.H, pt.metric(), proj, tol);
        if (s.has_hermitian_charges()) {
            const auto more = verify_intertwining(pt.pseudo(), pt.hermitian(), pt.metric(), proj, tol);
            e.details.insert(e.details.end(), more.begin(), more.end());
        } else {
            e.note = "Q rows omitted: no independent Hermitian supercharge for this realization";
        }
    } else if (check == "pseudo_susy") {
        for (const auto& r : pt.pseudo_fragment()) {
            if (!is_nilpotency_row(r)) e.details.push_back(r);
        }
    } else if (check == "nilpotency") {
        for (const auto& r : pt.pseudo_fragment()) {
            if (is_nilpotency_row(r)) e.details.push_back(r);
        }
        if (s.has_hermitian_charges()) {
            const auto rows = verify_hermitian_susy(pt.hermitian(), pt.hS(), s.rel_proj, tol, tol);
            for (const auto& r : rows) {
                if (is_nilpotency_row(r)) e.details.push_back(r);
            }
        }
    } else if (check == "factorization" || check == "bch") {
        FactorizationParams fp;
        try {
            fp = factorization_params(pt.mp());
        } catch (const FactorizationUndefined& err) {
            return skipped(check, z, tol, err.what());
        }
        e.details = check == "factorization" ? verify_factorization(s.real.gens, pt.metric(), fp, proj, tol)
                                             : verify_bch_relations(pt.metric(), s.real.gens, fp, proj, tol);
    } else if (check == "bogoliubov") {
        const auto n = s.real.bosons.size();
        for (std::size_t i = 0; i < n; ++i) {
            auto rows = verify_bogoliubov(pt.metric(), s.real.bosons[i].annihilator, s.real.bosons[i].creator, pt.mp(),
                                          proj, tol);
            for (auto& r : rows) {
                r.name += mode_suffix(i, n);
                e.details.push_back(std::move(r));
            }
        }
    } else if (check == "xp_form") {
        if (kind != RealizationKind::SingleMode) {
            return skipped(check, z, tol, "quadrature form is defined for the single-mode realization");
        }
        const auto xp = pseudo_supercharges_xp(pt.coeffs(), s.params.omega, s.real.gens.layout);
        const auto& fock = pt.pseudo();
        e.details = {make_result("Qcal (x-p) = Qcal (Fock)", relative_residual(xp.charge.matrix, fock.charge.matrix), tol),
                     make_result("Qcal# (x-p) = Qcal# (Fock)", relative_residual(xp.partner.matrix, fock.partner.matrix), tol)};
    } else if (check == "supercharges") {
        if (!s.has_hermitian_charges()) {
            return skipped(check, z, tol, "no independent Hermitian supercharge for the spin-orbit realization");
        }
        const ProjectedView view(s.rel_proj);
        const auto& modes = pt.tilde();
        const auto n = static_cast<Eigen::Index>(s.real.gens.layout.dimension());
        const ComplexMatrix id = ComplexMatrix::Identity(n, n);
        ComplexMatrix number = ComplexMatrix::Zero(n, n);
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const auto& a = modes[i].annihilator.matrix;
            const auto& ad = modes[i].creator.matrix;
            const ComplexMatrix comm = view.sandwich(a, ad) - view.sandwich(ad, a);
            e.details.push_back(
                make_result("[a~,a~^dag] = I" + mode_suffix(i, modes.size()), relative_residual(comm, view.sandwich(id)), tol));
            number += ad * a;
        }
        const ComplexMatrix hb = s.params.Omega * (number + 0.5 * static_cast<double>(modes.size()) * id);
        e.details.push_back(
            make_result("Omega(a~^dag a~ + 1/2) = h", relative_residual(view.sandwich(hb), view.sandwich(pt.h().matrix)), tol));
        for (const auto& r : verify_hermitian_susy(pt.hermitian(), pt.hS(), s.rel_proj, tol, tol)) {
            if (!is_nilpotency_row(r)) e.details.push_back(r);
        }
    }
    finalize(e);
    return e;
}

struct PointOutcome {
    std::vector<ReportEntry> entries;  // z-dependent checks in config order
    std::optional<std::string> abort;
};

PointOutcome evaluate_point(const Shared& s, double z, const std::vector<std::string>& checks) {
    PointOutcome out;
    PointEval pt(s, z);
    std::optional<std::string> undefined;
    try {
        pt.prepare();
    } catch (const MetricUndefined& e) {
        undefined = e.what();
    } catch (const NonPositive& e) {
        undefined = e.what();
    }
    for (const auto& check : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        if (undefined) {
            ReportEntry e;
            e.check = check;
            e.z = z;
            e.tolerance = s.cfg.tolerance(check);
            e.status = EntryStatus::MetricUndefined;
            e.note = *undefined;
            out.entries.push_back(std::move(e));
            continue;
        }
        try {
            out.entries.push_back(point_entry(s, pt, check, z));
        } catch (const Error& e) {
            out.abort = "check '" + check + "' at z = " + std::to_string(z) + ": " + e.what();
            return out;
        }
        if (s.cfg.timing) {
            out.entries.back().wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    }
    return out;
}

/// Runs `task(i)` for i in [0, n) on up to `workers` threads; results land in their own slots.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task) {
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) task(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::string basis_tag(const ModeLayout& layout) {
    return layout.describe() + "; row-major Kronecker order (leftmost factor slowest); boson levels 0..N-1; "
                               "fermion index 0 = empty";
}

}  // namespace

std::string status_name(EntryStatus s) {
    switch (s) {
        case EntryStatus::Pass: return "pass";
        case EntryStatus::Fail: return "fail";
        case EntryStatus::MetricUndefined: return "metric_undefined";
        case EntryStatus::Skipped: return "skipped";
    }
    return "?";
}

bool is_z_independent(const std::string& check) {
    return check == "relations" || check == "hermiticity" || check == "limits";
}

std::size_t predicted_hS_multiplicity(std::size_t modes, std::size_t level) {
    std::size_t total = 0;
    for (std::size_t f = 0; f <= std::min(modes, level); ++f) {
        total += binomial(modes, f) * binomial(level - f + modes - 1, modes - 1);
    }
    return total;
}

ReportSummary summarize(const std::vector<ReportEntry>& entries) {
    ReportSummary s;
    for (const auto& e : entries) {
        ++s.total;
        switch (e.status) {
            case EntryStatus::Pass: ++s.pass; break;
            case EntryStatus::Fail: ++s.fail; break;
            case EntryStatus::MetricUndefined: ++s.metric_undefined; break;
            case EntryStatus::Skipped: ++s.skipped; break;
        }
    }
    return s;
}

VerificationReport run_verify(const RunConfig& config) {
    VerificationReport report;
    report.config = config;
    const Shared shared(config);
    report.basis_ordering = basis_tag(shared.real.gens.layout);

    std::vector<std::string> point_checks;
    for (const auto& c : config.checks) {
        if (!is_z_independent(c)) point_checks.push_back(c);
    }

    std::vector<PointOutcome> outcomes(config.z_grid.size());
    if (!point_checks.empty()) {
        parallel_for(config.z_grid.size(), config.workers, [&](std::size_t i) {
            outcomes[i] = evaluate_point(shared, config.z_grid[i], point_checks);
        });
    }
    // Points past the first abort are dropped so the partial report does not depend on scheduling.
    std::size_t usable = outcomes.size();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].abort) {
            report.complete = false;
            report.abort_message = *outcomes[i].abort;
            usable = i + 1;
            break;
        }
    }

    for (const auto& check : config.checks) {
        if (is_z_independent(check)) {
            if (!report.complete) continue;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                report.entries.push_back(z_independent_entry(shared, check));
            } catch (const Error& e) {
                report.complete = false;
                report.abort_message = "check '" + check + "': " + e.what();
                break;
            }
            if (config.timing) {
                report.entries.back().wall_time =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            }
            continue;
        }
        for (std::size_t i = 0; i < usable; ++i) {
            for (const auto& e : outcomes[i].entries) {
                if (e.check == check) report.entries.push_back(e);
            }
        }
    }
    report.summary = summarize(report.entries);
    return report;
}

int exit_code(const VerificationReport& report) {
    if (!report.complete) return 3;
    return report.summary.fail > 0 ? 1 : 0;
}

SpectrumTable run_spectrum(const RunConfig& config, std::size_t n_levels) {
    SpectrumTable table;
    table.config = config;
    table.levels = n_levels;
    const Shared s(config);
    const double Om = s.params.Omega;
    const std::size_t n = s.boson_modes();
    std::size_t boson_dim = 1;
    for (auto i : s.real.gens.layout.boson_indices()) boson_dim *= s.real.gens.layout.factor_dim(i);
    const std::size_t other = s.real.gens.layout.dimension() / boson_dim;
    const std::size_t safe = config.cutoff / 4;

    std::vector<std::vector<SpectrumRow>> per_z(config.z_grid.size());
    std::vector<std::optional<std::string>> aborts(config.z_grid.size());
    parallel_for(config.z_grid.size(), config.workers, [&](std::size_t zi) {
        const double z = config.z_grid[zi];
        auto& rows = per_z[zi];
        EquivParams ep;
        try {
            (void)epsilon_of(s.params, z);
            ep = mu_nu(s.params, z);
        } catch (const Error& e) {
            if (dynamic_cast<const MetricUndefined*>(&e) == nullptr && dynamic_cast<const NonPositive*>(&e) == nullptr) {
                aborts[zi] = e.what();
                return;
            }
            for (const char* op : {"h", "h_S"}) {
                SpectrumRow r;
                r.z = z;
                r.op = op;
                r.status = "metric_undefined";
                rows.push_back(r);
            }
            return;
        }
        try {
            const auto h = build_h(s.real.gens, ep, s.params.omega);
            const auto hS = build_hS(s.real.gens, s.params, ep);
            const auto h_clusters =
                cluster_eigenvalues(num::eigvals_hermitian(h.matrix), config.tolerance("spectrum_h") * Om);
            const auto hs_clusters = cluster_eigenvalues(num::eigvals_hermitian(hS.matrix), kClusterTolerance * Om);
            for (std::size_t k = 0; k < n_levels && k < h_clusters.size(); ++k) {
                SpectrumRow r;
                r.z = z;
                r.op = "h";
                r.status = "ok";
                r.level = k;
                r.eigenvalue = h_clusters[k].value;
                r.predicted = (static_cast<double>(k) + 0.5 * static_cast<double>(n)) * Om;
                r.abs_deviation = std::abs(*r.eigenvalue - *r.predicted);
                r.multiplicity = h_clusters[k].multiplicity;
                r.predicted_multiplicity = binomial(k + n - 1, n - 1) * other;
                r.warning = k > safe;
                rows.push_back(r);
            }
            for (std::size_t k = 0; k < n_levels && k < hs_clusters.size(); ++k) {
                SpectrumRow r;
                r.z = z;
                r.op = "h_S";
                r.status = "ok";
                r.level = k;
                r.eigenvalue = hs_clusters[k].value;
                r.predicted = static_cast<double>(k) * Om;
                r.abs_deviation = std::abs(*r.eigenvalue - *r.predicted);
                r.multiplicity = hs_clusters[k].multiplicity;
                if (config.realization.kind != RealizationKind::SpinOrbit) {
                    r.predicted_multiplicity = predicted_hS_multiplicity(n, k);
                }
                r.warning = k > safe;
                rows.push_back(r);
            }
        } catch (const Error& e) {
            aborts[zi] = e.what();
        }
    });
    for (std::size_t zi = 0; zi < per_z.size(); ++zi) {
        if (aborts[zi]) {
            table.complete = false;
            table.abort_message = "z = " + std::to_string(config.z_grid[zi]) + ": " + *aborts[zi];
            break;
        }
        table.rows.insert(table.rows.end(), per_z[zi].begin(), per_z[zi].end());
    }
    return table;
}

SweepTable run_sweep(const RunConfig& config) {
    SweepTable table;
    table.config = config;
    const auto params = config.params();
    for (double z : config.z_grid) {
        SweepRow r;
        r.z = z;
        MetricParams mp;
        EquivParams ep;
        try {
            mp = epsilon_of(params, z);
        } catch (const MetricUndefined& e) {
            r.status = "metric_undefined";
            r.note = e.what();
            table.rows.push_back(r);
            continue;
        }
        r.epsilon = mp.epsilon;
        r.theta = mp.theta;
        try {
            ep = mu_nu(params, z);
        } catch (const Error& e) {
            r.status = "invalid";
            r.note = e.what();
            table.rows.push_back(r);
            continue;
        }
        r.mu = ep.mu;
        r.nu = ep.nu;
        r.status = "valid";
        try {
            const auto c = supercharge_coeffs(params, mp, ep);
            r.sigma = c.sigma;
            r.tau = c.tau;
            r.varphi = c.varphi;
            r.chi = c.chi;
            r.closure_residual = closure_residuals(c, params).max();
            if (const int case_z = special_case_of(z); case_z != 2) {
                try {
                    const auto sc = special_case_coeffs(params, case_z).coeffs;
                    r.special_case_deviation = std::max({rel_diff(c.sigma, sc.sigma), rel_diff(c.tau, sc.tau),
                                                         rel_diff(c.varphi, sc.varphi), rel_diff(c.chi, sc.chi)});
                } catch (const DomainError& e) {
                    r.note = e.what();
                }
            }
        } catch (const IdentityViolation& e) {
            r.status = "invalid";
            r.note = e.what();
        }
        try {
            const auto fp = factorization_params(mp);
            r.p = fp.p;
            r.q = fp.q;
            r.pprime = fp.pprime;
            r.qprime = fp.qprime;
        } catch (const Error& e) {
            r.note += (r.note.empty() ? "" : "; ") + std::string(e.what());
        }
        table.rows.push_back(r);
    }
    return table;
}

}  // namespace qhsusy
