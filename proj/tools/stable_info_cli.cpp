// stable-info: tables of stable densities, scores, regime comparisons and
// Fisher information in the (M) parameterization, as reproducible CSV/JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stableinfo/detail/format.hpp"
#include "stableinfo/detail/parallel.hpp"
#include "stableinfo/stableinfo.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using stableinfo::detail::g17;

struct Cell {
    std::string text;
    bool quoted = false;  // string-valued in JSON
};

Cell num(double v) { return {g17(v), std::isinf(v) || std::isnan(v)}; }
Cell str(std::string s) { return {std::move(s), true}; }

struct Table {
    std::vector<std::string> meta;  // key=value lines
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string render_csv(const Table& t, const std::string& command) {
    std::string out;
    out += "# stable-info " + std::string(kVersion) + "\n";
    out += "# command: " + command + "\n";
    for (const auto& m : t.meta) out += "# " + m + "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i)
        out += (i ? "," : "") + t.header[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i].text;
        out += "\n";
    }
    return out;
}

std::string render_json(const Table& t, const std::string& command) {
    std::string out = "{\n  \"meta\": {\n    \"tool\": \"stable-info\",\n    \"version\": \"";
    out += kVersion;
    out += "\",\n    \"command\": \"" + command + "\"";
    for (const auto& m : t.meta) {
        const auto eq = m.find('=');
        out += ",\n    \"" + m.substr(0, eq) + "\": \"" + m.substr(eq + 1) + "\"";
    }
    out += "\n  },\n  \"rows\": [\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += "    {";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            if (i) out += ", ";
            out += "\"" + t.header[i] + "\": ";
            if (t.rows[r][i].quoted)
                out += "\"" + t.rows[r][i].text + "\"";
            else
                out += t.rows[r][i].text;
        }
        out += (r + 1 < t.rows.size()) ? "},\n" : "}\n";
    }
    out += "  ]\n}\n";
    return out;
}

struct Grid {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    double at(int i) const {
        return (n == 1) ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
};

std::optional<Grid> parse_grid(const std::string& s) {
    Grid g;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.n) || c1 != ':' || c2 != ':' || g.n < 1 ||
        !(g.hi >= g.lo))
        return std::nullopt;
    return g;
}

int param_index(const std::string& name) {
    if (name == "mu") return stableinfo::fisher::kMu;
    if (name == "sigma") return stableinfo::fisher::kSigma;
    if (name == "alpha") return stableinfo::fisher::kAlpha;
    if (name == "beta") return stableinfo::fisher::kBeta;
    return -1;
}

struct Options {
    stableinfo::StableParams params;
    std::string grid_spec;
    std::string format = "csv";
    std::string output;
    std::string entry = "alpha,alpha";
    std::vector<double> deltas;
    double delta_knob = 0.5;
    double T = 5.0;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    bool strict = false;
};

stableinfo::quad::QuadConfig quad_cfg(const Options& o) {
    stableinfo::quad::QuadConfig c;
    c.abs_tol = o.abs_tol;
    c.rel_tol = o.rel_tol;
    c.max_subdivisions = o.max_subdivisions;
    return c;
}

std::vector<std::string> tol_meta(const Options& o) {
    return {"abs_tol=" + g17(o.abs_tol), "rel_tol=" + g17(o.rel_tol),
            "max_subdivisions=" + std::to_string(o.max_subdivisions)};
}

int write_out(const Table& t, const Options& o, const std::string& command) {
    const std::string body = (o.format == "json") ? render_json(t, command) : render_csv(t, command);
    if (o.output.empty() || o.output == "-") {
        std::fwrite(body.data(), 1, body.size(), stdout);
        return 0;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file '" << o.output << "'\n";
        return 2;
    }
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace stableinfo;

    CLI::App app{"stable densities, scores and Fisher information near the Gaussian boundary"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Options o;
    // echoed provenance: the data-shaping flags only, not the output path
    std::string command_line;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--output") {
            ++i;
            continue;
        }
        command_line += std::string(command_line.empty() ? "" : " ") + argv[i];
    }

    auto add_common = [&](CLI::App* sub, bool with_params, bool with_grid) {
        if (with_params) {
            sub->add_option("--alpha", o.params.alpha, "characteristic exponent in (1,2]");
            sub->add_option("--beta", o.params.beta, "skewness in [-0.999, 0.999]");
            sub->add_option("--mu", o.params.mu, "location");
            sub->add_option("--sigma", o.params.sigma, "scale > 0");
        }
        if (with_grid) sub->add_option("--grid", o.grid_spec, "x grid as lo:hi:n")->required();
        sub->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", o.output, "output path (default stdout)");
        sub->add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance");
        sub->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
        sub->add_option("--max-subdivisions", o.max_subdivisions, "quadrature panel budget");
        sub->add_flag("--strict", o.strict, "exit 3 on any non-converged quadrature");
    };

    auto* c_density = app.add_subcommand("density", "density f and its error estimate on a grid");
    add_common(c_density, true, true);
    auto* c_score = app.add_subcommand("score", "score vector (s_mu, s_sigma, s_alpha, s_beta)");
    add_common(c_score, true, true);
    auto* c_fisher = app.add_subcommand("fisher", "4x4 Fisher information by quadrature");
    add_common(c_fisher, true, false);
    c_fisher->add_option("--T", o.T, "inner cut of the integration plan");
    c_fisher->add_option("--delta-knob", o.delta_knob, "regime-boundary knob in (0,1)");
    auto* c_cmp = app.add_subcommand("compare-asymptotics",
                                     "exact density/derivative against the core+tail approximant");
    add_common(c_cmp, true, true);
    c_cmp->add_option("--delta-knob", o.delta_knob, "regime-boundary knob in (0,1)");
    auto* c_table1 = app.add_subcommand("table1", "limiting information matrix at alpha = 2");
    add_common(c_table1, false, false);
    auto* c_sweep = app.add_subcommand("sweep", "entry vs asymptotic formula over a delta list");
    add_common(c_sweep, true, false);
    c_sweep->add_option("--entry", o.entry, "matrix entry, e.g. alpha,alpha")->required();
    c_sweep
        ->add_option("--deltas", o.deltas, "comma-separated list of delta = 2 - alpha values")
        ->required()
        ->delimiter(',');
    c_sweep->add_option("--T", o.T, "inner cut of the integration plan");
    c_sweep->add_option("--delta-knob", o.delta_knob, "regime-boundary knob in (0,1)");
    auto* c_verify = app.add_subcommand("verify", "oracle comparisons as JSON lines");
    c_verify->add_option("--output", o.output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    bool any_nonconverged = false;

    try {
        const auto cfg = quad_cfg(o);
        Table t;
        t.meta = tol_meta(o);

        if (c_density->parsed() || c_score->parsed() || c_cmp->parsed()) {
            validate(o.params);
            const auto grid = parse_grid(o.grid_spec);
            if (!grid) {
                std::cerr << "error: --grid expects lo:hi:n with n >= 1 and hi >= lo\n";
                return 2;
            }

            if (c_density->parsed()) {
                t.header = {"x", "f", "abs_error", "method"};
                t.rows.resize(grid->n);
                std::vector<bool> conv(grid->n, true);
                detail::parallel_for(grid->n, [&](int i) {
                    const double x = grid->at(i);
                    const auto r = density::density(x, o.params, cfg);
                    t.rows[i] = {num(x), num(r.value), num(r.abs_error), str(method_name(r.method))};
                    conv[i] = r.converged;
                });
                for (bool c : conv) any_nonconverged |= !c;
            } else if (c_score->parsed()) {
                t.header = {"x", "s_mu", "s_sigma", "s_alpha", "s_beta"};
                t.rows.resize(grid->n);
                detail::parallel_for(grid->n, [&](int i) {
                    const double x = grid->at(i);
                    const auto st = standardize(x, o.params);
                    const auto s = fisher::score_vector(st.x_std, o.params.alpha, o.params.beta, cfg);
                    // map the standard-parameter scores back through the scaling
                    t.rows[i] = {num(x), num(s.s_mu / o.params.sigma),
                                 num(s.s_sigma / o.params.sigma), num(s.s_alpha), num(s.s_beta)};
                });
            } else {
                t.header = {"x",           "regime",        "f_exact",  "g_approx",
                            "rel_err",     "fprime_exact",  "gprime_approx", "rel_err_prime"};
                t.rows.resize(grid->n);
                std::vector<bool> conv(grid->n, true);
                detail::parallel_for(grid->n, [&](int i) {
                    const double x = grid->at(i);
                    const double a = o.params.alpha, b = o.params.beta;
                    const auto pr = density::density_pair_std(x, a, b, cfg);
                    const double g = asymptotics::density_approx(x, a, b);
                    const double gp = asymptotics::density_deriv_approx(x, a, b);
                    const auto reg = asymptotics::classify(x, a, b, o.delta_knob);
                    t.rows[i] = {num(x),
                                 str(asymptotics::regime_name(reg.kind)),
                                 num(pr.f.value),
                                 num(g),
                                 num(pr.f.value / g - 1.0),
                                 num(pr.fprime.value),
                                 num(gp),
                                 num(pr.fprime.value / gp - 1.0)};
                    conv[i] = pr.f.converged && pr.fprime.converged;
                });
                for (bool c : conv) any_nonconverged |= !c;
            }
        } else if (c_fisher->parsed()) {
            validate(o.params);
            const auto plan = fisher::make_interval_plan(o.params.alpha, o.T, o.delta_knob);
            const auto m = fisher::fisher_matrix(o.params.alpha, o.params.beta, plan);
            t.meta.push_back("plan_x1=" + g17(plan.x1));
            t.meta.push_back("plan_x2=" + g17(plan.x2));
            t.meta.push_back("plan_x3=" + g17(plan.x3));
            t.meta.push_back(std::string("plan_degenerate=") + (plan.degenerate ? "true" : "false"));
            t.header = {"param_i", "param_j", "value", "abs_error", "provenance"};
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j)
                    t.rows.push_back({str(fisher::param_name(i)), str(fisher::param_name(j)),
                                      num(m.entries[i][j]), num(m.abs_error[i][j]),
                                      str(provenance_name(m.provenance[i][j]))});
        } else if (c_table1->parsed()) {
            const auto m = fisher::table1_limits();
            t.header = {"param_i", "param_j", "value"};
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j)
                    t.rows.push_back({str(fisher::param_name(i)), str(fisher::param_name(j)),
                                      num(m.entries[i][j])});
        } else if (c_sweep->parsed()) {
            const auto comma = o.entry.find(',');
            const int i = param_index(o.entry.substr(0, comma));
            const int j = (comma == std::string::npos) ? -1 : param_index(o.entry.substr(comma + 1));
            if (i < 0 || j < 0) {
                std::cerr << "error: --entry expects two of mu,sigma,alpha,beta\n";
                return 2;
            }
            t.header = {"delta", "exact", "asymptotic", "ratio"};
            const int n = static_cast<int>(o.deltas.size());
            t.rows.resize(n);
            std::vector<bool> conv(n, true);
            detail::parallel_for(n, [&](int k) {
                const double delta = o.deltas[k];
                const double alpha = 2.0 - delta;
                const auto plan = fisher::make_interval_plan(alpha, o.T, o.delta_knob);
                const auto e = fisher::fisher_entry(i, j, alpha, o.params.beta, plan);
                const auto asym = fisher::fisher_asymptotic(alpha, o.params.beta);
                const double ref = asym.entries[i][j];
                t.rows[k] = {num(delta), num(e.value), num(ref),
                             num(ref != 0.0 ? e.value / ref
                                            : std::numeric_limits<double>::quiet_NaN())};
                conv[k] = e.converged;
            });
            for (bool c : conv) any_nonconverged |= !c;
        } else if (c_verify->parsed()) {
            std::vector<oracle::OracleReport> reports;
            const auto cfs = oracle::closed_forms();
            auto value_of = [&](const std::string& id) {
                for (const auto& c : cfs)
                    if (c.id == id) return c.value;
                return std::numeric_limits<double>::quiet_NaN();
            };
            reports.push_back(oracle::compare(
                "density_std(0;1.5,0)", density::density_std(0.0, 1.5, 0.0).value,
                value_of("density_at_mode_alpha_1.5"), 1e-10));
            reports.push_back(oracle::compare(
                "density_std(0;1.8,0)", density::density_std(0.0, 1.8, 0.0).value,
                value_of("density_at_mode_alpha_1.8"), 1e-10));
            reports.push_back(oracle::compare("density_std(1;2,0)",
                                              density::density_std(1.0, 2.0, 0.0).value,
                                              value_of("gaussian_density_1"), 1e-12));
            reports.push_back(oracle::compare("density_deriv_std(1;2,0)",
                                              density::density_deriv_std(1.0, 2.0, 0.0).value,
                                              value_of("gaussian_density_deriv_1"), 1e-12));
            reports.push_back(oracle::compare("zeta(1.9,0.5)", derive(1.9, 0.5).zeta,
                                              value_of("zeta_1.9_0.5"), 1e-14));
            for (double x : {0.7, 2.5, 6.0}) {
                char label[64];
                std::snprintf(label, sizeof label, "cross_method_density(x=%g;1.9,0.5)", x);
                reports.push_back(oracle::compare(label, density::density_std(x, 1.9, 0.5).value,
                                                  fourier::density_fourier(x, 1.9, 0.5).value,
                                                  1e-8));
            }
            {
                const auto s = fisher::score_vector(3.0, 1.8, 0.4);
                const auto fd = oracle::score_fd(3.0, 1.8, 0.4);
                reports.push_back(oracle::compare("score_mu(3;1.8,0.4)", s.s_mu, fd.s_mu, 1e-5));
                reports.push_back(
                    oracle::compare("score_alpha(3;1.8,0.4)", s.s_alpha, fd.s_alpha, 1e-5));
            }
            {
                const auto plan = fisher::make_interval_plan(1.9);
                const auto e = fisher::fisher_entry(fisher::kMu, fisher::kMu, 1.9, 0.4, plan);
                const double orc =
                    oracle::fisher_trapezoid(fisher::kMu, fisher::kMu, 1.9, 0.4, plan.x3, 2001);
                reports.push_back(
                    oracle::compare("fisher_mumu(1.9,0.4)", e.value, orc, 0.0, 1e-3));
            }
            std::string body;
            bool all_pass = true;
            for (const auto& r : reports) {
                body += oracle::to_json_line(r) + "\n";
                all_pass &= r.pass;
            }
            if (o.output.empty() || o.output == "-") {
                std::fwrite(body.data(), 1, body.size(), stdout);
            } else {
                std::ofstream f(o.output, std::ios::binary);
                f.write(body.data(), static_cast<std::streamsize>(body.size()));
            }
            return all_pass ? 0 : 1;
        }

        const int rc = write_out(t, o, command_line);
        if (rc != 0) return rc;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (o.strict && any_nonconverged) return 3;
    return 0;
}
