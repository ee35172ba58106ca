// qbell: phase-space Bell operator toolkit.
// Subcommands: table1, bounds, wigner, cglmp, scan.
// Exit codes: 0 success, 1 computation/budget error, 2 usage/IO error.

#include <iostream>

#include <CLI11.hpp>

#include "qbell/serialize.hpp"

using namespace qbell;

namespace {

struct Output {
    std::string format = "json";
    std::string out_path;

    void emit(const ordered_json& j, const std::string& csv) const {
        std::string text = format == "csv" ? csv : j.dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            write_text(out_path, text);
    }
};

void add_output_flags(CLI::App* cmd, Output& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out_path, "write result to file instead of stdout");
}

struct Table1Row {
    int d;
    double d2_max_w, max_n, d3_min_w, c_min, b_lhv;
    std::string method;
};

Table1Row table1_row(int d, const AnnealConfig& anneal) {
    require_prime(d);
    if (d == 2) {
        // qubit semantics: the W column holds max W itself, the lhv
        // column the CHSH value of the T-gate combination scaled by
        // the 16 phase-space cells
        PhaseSpaceTable w = wigner_rotated_bell_closed({}, 2);
        double wmax = -1e300, wmin = 1e300;
        for (auto& v : w.values) {
            wmax = std::max(wmax, v.real());
            wmin = std::min(wmin, v.real());
        }
        double lhv = lhv_exact_generic(qubit_chsh_t()) / 16.0;
        return {2, wmax, negativity_volume(w), 8.0 * wmin, c_min(2), lhv, "exact"};
    }
    ScanResult sc = extremal_character_scan(d);
    double max_n = -1e300;
    for (int g = 1; g < d; ++g) max_n = std::max(max_n, negativity_by_gamma(g, d));
    Table1Row row{d, sc.d2_max_w, max_n, sc.d3_min_w, c_min(d), 0, ""};
    if (d <= 7) {
        Vec psi = rotated_bell(cube_unitary({1, 0, 0}, d).adjoint(), d, Side::first);
        LhvResult r = lhv_exact(characteristic_fn(psi * psi.adjoint(), 2, d), d);
        row.b_lhv = r.bound;
        row.method = "exact";
    } else {
        LhvResult r = lhv_anneal(build_C(d), d, anneal);
        row.b_lhv = r.bound;
        row.method = "heuristic";
    }
    return row;
}

int run(int argc, char** argv) {
    CLI::App app{"phase-space Bell operators over prime dimensions"};
    app.require_subcommand(1);

    // shared knobs
    int d = 3, gamma = 1, zpar = 0, eps = 0;
    AnnealConfig anneal;
    Output out;

    auto* t1 = app.add_subcommand("table1", "extremal Wigner values and Bell bounds per dimension");
    std::vector<int> dims;
    t1->add_option("--dims", dims, "prime dimensions")->delimiter(',')->required();
    t1->add_option("--restarts", anneal.restarts, "annealer restarts")->capture_default_str();
    t1->add_option("--iters", anneal.iters, "annealer sweeps per restart")->capture_default_str();
    t1->add_option("--t0", anneal.t0, "initial temperature")->capture_default_str();
    t1->add_option("--seed", anneal.seed, "annealer base seed")->capture_default_str();
    add_output_flags(t1, out);

    auto* bo = app.add_subcommand("bounds", "local-deterministic bound of a Bell operator");
    std::string bell_kind = "compact-cube";
    bo->add_option("--d", d, "dimension")->capture_default_str();
    bo->add_option("--bell", bell_kind, "operator family")
        ->check(CLI::IsMember({"compact-cube", "qutrit3"}))
        ->capture_default_str();
    bo->add_option("--gamma", gamma)->capture_default_str();
    bo->add_option("--z", zpar)->capture_default_str();
    bo->add_option("--eps", eps)->capture_default_str();
    bo->add_option("--restarts", anneal.restarts)->capture_default_str();
    bo->add_option("--iters", anneal.iters)->capture_default_str();
    bo->add_option("--t0", anneal.t0)->capture_default_str();
    bo->add_option("--seed", anneal.seed)->capture_default_str();
    add_output_flags(bo, out);

    auto* wi = app.add_subcommand("wigner", "Wigner table of the rotated Bell state");
    wi->add_option("--d", d, "dimension")->capture_default_str();
    wi->add_option("--gamma", gamma)->capture_default_str();
    wi->add_option("--z", zpar)->capture_default_str();
    wi->add_option("--eps", eps)->capture_default_str();
    add_output_flags(wi, out);

    auto* cg = app.add_subcommand("cglmp", "ramp-weight correlation functional and its bounds");
    cg->add_option("--d", d, "dimension")->capture_default_str();
    add_output_flags(cg, out);

    auto* sn = app.add_subcommand("scan", "extremal character sums over all cube parameters");
    sn->add_option("--d", d, "dimension")->capture_default_str();
    add_output_flags(sn, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*t1) {
        if (dims.empty()) throw CLI::ValidationError("--dims must not be empty");
        ordered_json rows = ordered_json::array();
        std::string csv = csv_row({"d", "d2_max_w", "max_n", "d3_min_w", "c_min", "b_lhv", "method"});
        for (int dd : dims) {
            Table1Row r = table1_row(dd, anneal);
            rows.push_back({{"d", r.d},
                            {"d2_max_w", num12(r.d2_max_w)},
                            {"max_n", num12(r.max_n)},
                            {"d3_min_w", num12(r.d3_min_w)},
                            {"c_min", num12(r.c_min)},
                            {"b_lhv", num12(r.b_lhv)},
                            {"method", r.method}});
            csv += csv_row({std::to_string(r.d), fmt12(r.d2_max_w), fmt12(r.max_n),
                            fmt12(r.d3_min_w), fmt12(r.c_min), fmt12(r.b_lhv), r.method});
        }
        out.emit(rows, csv);
        return 0;
    }

    if (*bo) {
        require_prime(d);
        LhvResult r;
        if (bell_kind == "qutrit3") {
            if (d != 3) throw CLI::ValidationError("qutrit3 requires --d 3");
            r.bound = lhv_exact_generic(bell_qutrit_noncharacter());
            r.method = "exact";
            r.alpha = r.beta = {};
        } else if (d <= 7) {
            Vec psi = rotated_bell(cube_unitary({gamma, zpar, eps}, d).adjoint(), d, Side::first);
            r = lhv_exact(characteristic_fn(psi * psi.adjoint(), 2, d), d);
        } else {
            if (gamma != 1 || zpar != 0 || eps != 0)
                throw std::domain_error("annealing landscape is built at gamma=1, z=0, eps=0");
            r = lhv_anneal(build_C(d), d, anneal);
        }
        ordered_json j = to_json(r, d);
        auto join = [](const std::vector<int>& v) {
            std::string s;
            for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
            return s;
        };
        std::string csv = csv_row({"d", "method", "bound", "restarts", "seed", "wall_ms",
                                   "alpha", "beta"})
                        + csv_row({std::to_string(d), r.method, fmt12(r.bound),
                                   std::to_string(r.restarts), std::to_string(r.seed),
                                   fmt12(r.wall_ms), join(r.alpha), join(r.beta)});
        out.emit(j, csv);
        return 0;
    }

    if (*wi) {
        require_prime(d);
        CubeParams p{gamma, zpar, eps};
        PhaseSpaceTable w = wigner_rotated_bell_closed(p, d);
        double wmax = -1e300, wmin = 1e300;
        for (auto& v : w.values) {
            wmax = std::max(wmax, v.real());
            wmin = std::min(wmin, v.real());
        }
        ordered_json j = to_json(w);
        j["summary"] = {{"max", num12(wmax)},
                        {"min", num12(wmin)},
                        {"negativity", num12(negativity_volume(w))}};
        if (d <= 7) {
            // self-check against the matrix-level construction
            Mat U = d == 2 ? Mat((Mat(2, 2) << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4))
                                     .finished())
                           : cube_unitary(p, d);
            Vec psi = rotated_bell(U, d, Side::first);
            PhaseSpaceTable wm = wigner_fn(psi * psi.adjoint(), 2, d);
            double diff = 0;
            for (size_t i = 0; i < w.size(); ++i)
                diff = std::max(diff, std::abs(w.values[i] - wm.values[i]));
            j["summary"]["matrix_check_max_diff"] = num12(diff);
        }
        std::string csv = csv_row({"x1", "z1", "x2", "z2", "re", "im"});
        for (size_t i = 0; i < w.size(); ++i) {
            MultiPoint u = w.point_at(i);
            csv += csv_row({std::to_string(u[0].x), std::to_string(u[0].z),
                            std::to_string(u[1].x), std::to_string(u[1].z),
                            fmt12(w.values[i].real()), fmt12(w.values[i].imag())});
        }
        out.emit(j, csv);
        return 0;
    }

    if (*cg) {
        require_prime(d);
        if (d == 2) throw CLI::ValidationError("cglmp requires an odd prime dimension");
        std::vector<double> W = CglmpConfig::ramp_outcome_weights(d);
        auto [g, c0] = cglmp_weights_from_outcome(W, d);
        CglmpConfig cfg = cglmp_default(d);
        cfg.weights = g;
        BellOperator B = bell_cglmp(cfg, d);
        Vec phi = bell_state(d);
        double op_val = B.expect(phi);
        double func_val = cglmp_probability_functional(cfg, phi, d) + 2.0 * c0;
        double lhv = cglmp_lhv_bound(W, d);
        double modes = cglmp_modes_value(cfg, d) + 2.0 * c0;
        double residue = std::abs(op_val + 2.0 * c0 - func_val);
        ordered_json j{{"d", d},
                       {"lhv_bound", num12(lhv)},
                       {"modes_value", num12(modes)},
                       {"operator_value", num12(op_val + 2.0 * c0)},
                       {"functional_value", num12(func_val)},
                       {"agreement_residue", num12(residue)}};
        std::string csv =
            csv_row({"d", "lhv_bound", "modes_value", "operator_value", "functional_value",
                     "agreement_residue"})
            + csv_row({std::to_string(d), fmt12(lhv), fmt12(modes), fmt12(op_val + 2.0 * c0),
                       fmt12(func_val), fmt12(residue)});
        out.emit(j, csv);
        return 0;
    }

    // scan
    require_prime(d);
    ScanResult sc = extremal_character_scan(d);
    ordered_json j{{"d", d},
                   {"d2_max_w", num12(sc.d2_max_w)},
                   {"d3_min_w", num12(sc.d3_min_w)},
                   {"argmax", {{"a1", sc.argmax_a1}, {"a3", sc.argmax_a3}}},
                   {"argmin", {{"a1", sc.argmin_a1}, {"a3", sc.argmin_a3}}}};
    std::string csv = csv_row({"d", "d2_max_w", "d3_min_w", "argmax_a1", "argmax_a3",
                               "argmin_a1", "argmin_a3"})
                    + csv_row({std::to_string(d), fmt12(sc.d2_max_w), fmt12(sc.d3_min_w),
                               std::to_string(sc.argmax_a1), std::to_string(sc.argmax_a3),
                               std::to_string(sc.argmin_a1), std::to_string(sc.argmin_a3)});
    out.emit(j, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
