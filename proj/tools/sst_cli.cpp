// Command-line front end: catalog access, manifold-file checks, surgery
// constructions, geography reports, curve diagnostics and the
// Donaldson-Witten Laurent engine.
//
// Exit codes: 0 success, 1 violation found, 2 input error.

#include <CLI11.hpp>

#include <complex>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sst/sst.hpp"

namespace {

using namespace sst;
using Cd = std::complex<double>;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

Cd parse_complex(const std::string& text) {
    std::istringstream is(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(is >> re)) throw InputError("cannot parse complex number from '" + text + "'");
    if (is >> comma) {
        if (comma != ',' || !(is >> im))
            throw InputError("cannot parse complex number from '" + text + "' (want RE[,IM])");
    }
    return {re, im};
}

std::vector<long long> parse_coords(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw InputError("cannot parse integer coordinate '" + item + "'");
        }
    }
    if (out.empty()) throw InputError("empty coordinate list");
    return out;
}

std::vector<Cd> parse_complex_vector(const std::string& text) {
    std::vector<Cd> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) out.push_back(parse_complex(item));
    return out;
}

std::vector<double> parse_radii(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InputError("cannot parse radius '" + item + "'");
        }
    }
    return out;
}

/// Inputs are file paths or catalog names; files win when both exist.
FourManifoldModel load_model(const std::string& arg) {
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg);
        if (!in) throw InputError("cannot open file '" + arg + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            return parse_manifold(buf.str());
        } catch (const InputError& e) {
            throw InputError(arg + ": " + e.what());
        }
    }
    return catalog(arg);
}

void emit_model(const FourManifoldModel& M, const std::string& out_path) {
    const std::string text = serialize_manifold(M);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write file '" + out_path + "'");
    out << text;
}

std::string fmt_complex(Cd v) {
    std::ostringstream os;
    os << std::setprecision(12) << v.real();
    if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "-") << std::abs(v.imag()) << "i";
    return os.str();
}

void print_model_summary(const FourManifoldModel& M) {
    NumericalInvariants inv = numerical_invariants(M);
    std::cout << "name:      " << M.name << "\n"
              << "betti:     b1=" << M.b1 << " b2+=" << M.b2plus << " b2-=" << M.b2minus << "\n"
              << "chi_h:     " << format_chi_h(inv) << "   c1^2: " << inv.c1sq
              << "   chi: " << inv.chi << "   sigma: " << inv.sigma << "\n"
              << "lattice:   rank " << M.lattice.rank() << ", gram rows:";
    for (std::size_t i = 0; i < M.lattice.rank(); ++i) {
        std::cout << " [";
        for (std::size_t j = 0; j < M.lattice.rank(); ++j) {
            if (j) std::cout << ",";
            std::cout << M.lattice.gram(i, j);
        }
        std::cout << "]";
    }
    std::cout << "\nlift:      " << class_to_string(M.lift.upsilon) << "\n";
    std::cout << "raw SW:    ";
    if (M.basic_classes.empty()) std::cout << "(none)";
    for (const auto& [x, sw] : M.basic_classes)
        std::cout << class_to_string(x) << "->" << sw.str() << " ";
    std::cout << "\n";

    SWSeries tw = twisted_series(M);
    std::cout << "twisted:   ";
    if (tw.empty()) std::cout << "0";
    for (const auto& [x, c] : tw.terms())
        std::cout << (c > 0 ? "+" : "") << c.str() << " e^{z" << class_to_string(x) << "} ";
    std::cout << "\n";

    SstVerdict v = sst_check(M);
    GeographyRecord rec = count_B_and_bound(M);
    std::cout << "order:     required " << v.required_order << ", actual "
              << v.actual_order.to_string() << (v.probabilistic ? " (probabilistic)" : "") << "\n"
              << "SST:       " << (v.is_sst ? "yes" : "NO") << "\n"
              << "B:         " << rec.B << "  noether-bound "
              << (rec.bound_satisfied ? "ok" : "VIOLATED") << ", corollary "
              << (rec.corollary_satisfied ? "ok" : "VIOLATED") << "\n";
    if (!M.provenance.empty()) std::cout << "notes:     " << M.provenance << "\n";
}

int cmd_catalog_list() {
    std::cout << "catalog entries (patterns: K3, E(n) n>=2, E(n)+kbl, Y(n) n>=4, "
                 "synthetic-nonSST(even n>=4)):\n";
    for (const auto& name : catalog_names()) std::cout << "  " << name << "\n";
    return kExitOk;
}

int cmd_catalog_show(const std::string& name, bool as_json) {
    FourManifoldModel M = catalog(name);
    if (as_json)
        std::cout << serialize_manifold(M);
    else
        print_model_summary(M);
    return kExitOk;
}

int cmd_check(const std::vector<std::string>& inputs, bool strict) {
    bool violation = false;
    for (const auto& arg : inputs) {
        FourManifoldModel M = load_model(arg);
        ValidationReport rep = validate_model(M, strict);
        std::cout << "== " << arg << " (" << M.name << ")\n";
        if (!rep.issues.empty()) std::cout << rep.summary();
        if (!rep.ok()) {
            std::cout << "validation: FAILED\n";
            violation = true;
            continue;
        }
        std::cout << "validation: ok\n";
        SstVerdict v = sst_check(M);
        GeographyRecord rec = count_B_and_bound(M);
        std::cout << "SST: " << (v.is_sst ? "yes" : "NO") << " (required " << v.required_order
                  << ", actual " << v.actual_order.to_string() << "), B = " << rec.B
                  << ", bound " << (rec.bound_satisfied ? "ok" : "VIOLATED") << "\n";
        violation |= !v.is_sst || !rec.bound_satisfied || !rec.corollary_satisfied;
    }
    return violation ? kExitViolation : kExitOk;
}

int cmd_geography(const std::vector<std::string>& inputs, const std::string& csv_path) {
    std::vector<FourManifoldModel> models;
    models.reserve(inputs.size());
    for (const auto& arg : inputs) models.push_back(load_model(arg));
    GeographyReport rep = geography_report(models);

    std::cout << std::left << std::setw(24) << "name" << std::setw(8) << "chi_h" << std::setw(7)
              << "c1sq" << std::setw(5) << "B" << std::setw(8) << "order" << std::setw(6) << "sst"
              << "bound\n";
    for (const auto& r : rep.records) {
        if (!r.valid) {
            std::cout << std::left << std::setw(24) << r.name << "INVALID: " << r.error << "\n";
            continue;
        }
        std::cout << std::left << std::setw(24) << r.name << std::setw(8) << format_chi_h(r.inv)
                  << std::setw(7) << r.inv.c1sq << std::setw(5) << r.B << std::setw(8)
                  << r.actual_order.to_string() << std::setw(6) << (r.is_sst ? "yes" : "NO")
                  << (r.bound_satisfied ? "ok" : "VIOLATED") << "\n";
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw InputError("cannot write file '" + csv_path + "'");
        write_geography_csv(out, rep);
        std::cout << "scatter dataset written to " << csv_path << "\n";
    }
    return rep.any_violation() ? kExitViolation : kExitOk;
}

int cmd_curve_roots(const std::string& m_text) {
    const Cd m = parse_complex(m_text);
    FiberSet fs = discriminant_roots(m);
    std::cout << "discriminant roots at m = " << fmt_complex(m) << "\n";
    for (std::size_t j = 0; j < 3; ++j) {
        const Cd z = m - 1.5;
        auto fd = fiber_eval(z, fs.s[j]);
        std::cout << "  [" << to_string(fs.tags[j]) << "] u = " << fmt_complex(fs.roots[j])
                  << "\n      g2 = " << fmt_complex(fd.g2) << ", g3 = " << fmt_complex(fd.g3)
                  << ", Delta' = " << fmt_complex(fd.delta_prime)
                  << "\n      period^2 = " << fmt_complex(fd.period_sq)
                  << ", T = " << fmt_complex(fd.T) << "\n";
    }
    return kExitOk;
}

int cmd_curve_scaling(const std::string& quantity, const std::string& radii_text) {
    ScalingQuantity q;
    if (quantity == "period")
        q = ScalingQuantity::Period;
    else if (quantity == "g2_at_cusp_roots")
        q = ScalingQuantity::G2AtCuspRoots;
    else if (quantity == "delta_prime")
        q = ScalingQuantity::DeltaPrime;
    else if (quantity == "delta_u")
        q = ScalingQuantity::DeltaU;
    else
        throw InputError("unknown quantity '" + quantity +
                         "' (period|g2_at_cusp_roots|delta_prime|delta_u)");
    std::vector<double> radii = parse_radii(radii_text);
    ScalingFit fit = cusp_scaling_fit(q, radii);
    std::cout << "quantity:     " << quantity << "\n"
              << "samples:      " << fit.samples << "\n"
              << "fitted slope: " << std::setprecision(8) << fit.slope << "\n"
              << "max residual: " << fit.max_residual << "\n";
    return kExitOk;
}

struct ZdwCliArgs {
    std::string input;
    std::string p_text = "0";
    std::string s_text;
    std::string k_text = "1";
};

ZdwInput make_zdw_input(const ZdwCliArgs& args) {
    ZdwInput in;
    in.model = load_model(args.input);
    in.p = parse_complex(args.p_text);
    if (!args.s_text.empty()) in.S = parse_complex_vector(args.s_text);
    in.normalization_k = parse_complex(args.k_text);
    return in;
}

void print_verdict(const char* label, const RegularityVerdict& v) {
    std::cout << label << ": pole order " << v.pole_order_detected << " (bound "
              << v.pole_bound << "), bound "
              << (v.consistent_with_bound ? "consistent" : "VIOLATED") << ", SST-regularity "
              << (v.consistent_with_sst ? "consistent" : "VIOLATED")
              << (v.inconclusive ? " [INCONCLUSIVE: unstable spectrum]" : "") << "\n";
}

int cmd_zdw_laurent(const ZdwCliArgs& args, const LaurentOptions& opt,
                    const std::string& csv_path) {
    ZdwInput in = make_zdw_input(args);
    RegularityAnalysis an = regularity_analysis(in, opt);
    const LaurentSpectrum& spec = an.principal;

    std::cout << "Laurent spectrum of Z_DW around m = 3/2 (radius " << spec.radius
              << ", check radius " << spec.radius2 << ", " << spec.samples << " samples)\n";
    std::cout << std::left << std::setw(5) << "k" << std::setw(24) << "Re c_k" << std::setw(24)
              << "Im c_k" << std::setw(16) << "|c_k|" << "stability\n";
    for (const auto& [k, c] : spec.coeff) {
        std::cout << std::left << std::setw(5) << k << std::setw(24) << std::setprecision(12)
                  << c.real() << std::setw(24) << c.imag() << std::setw(16) << std::abs(c)
                  << spec.stability.at(k) << "\n";
    }
    std::cout << "engine: single-valuedness " << spec.single_valued_residual
              << ", half-integer leakage " << spec.half_integer_residual
              << ", reconstruction " << spec.reconstruction_residual << "\n";
    if (an.dual_branch)
        std::cout << "dual-branch run (odd period exponent or S-pairing): verdicts below "
                     "must hold for both assignments\n";
    print_verdict("verdict", an.combined);

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw InputError("cannot write file '" + csv_path + "'");
        out << "k,re,im,abs,stability\n";
        for (const auto& [k, c] : spec.coeff)
            out << k << "," << std::setprecision(17) << c.real() << "," << c.imag() << ","
                << std::abs(c) << "," << spec.stability.at(k) << "\n";
        std::cout << "coefficient table written to " << csv_path << "\n";
    }

    const bool violation = !an.combined.inconclusive &&
                           (!an.combined.consistent_with_bound || !an.combined.consistent_with_sst);
    return violation ? kExitViolation : kExitOk;
}

int cmd_zdw_eval(const ZdwCliArgs& args, const std::string& m_text) {
    ZdwInput in = make_zdw_input(args);
    ZdwValue v = zdw_eval_detailed(in, parse_complex(m_text));
    std::cout << "Z_DW = " << fmt_complex(v.value) << "\n";
    for (const auto& fc : v.fibers)
        std::cout << "  [" << to_string(fc.tag) << "] u = " << fmt_complex(fc.u)
                  << "  contribution = " << fmt_complex(fc.value) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"superconformal-simple-type calculus for smooth 4-manifolds"};
    app.require_subcommand(1);

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "list or show built-in models");
    auto* list_cmd = catalog_cmd->add_subcommand("list", "list catalog entries");
    auto* show_cmd = catalog_cmd->add_subcommand("show", "print one catalog entry");
    std::string show_name;
    bool show_json = false;
    show_cmd->add_option("name", show_name, "catalog name")->required();
    show_cmd->add_flag("--json", show_json, "emit the manifold file instead of a summary");
    catalog_cmd->require_subcommand(1);

    // check
    auto* check_cmd = app.add_subcommand("check", "validate manifold files and run the SST/bound checks");
    std::vector<std::string> check_inputs;
    bool check_strict = false;
    check_cmd->add_option("inputs", check_inputs, "manifold files or catalog names")->required();
    check_cmd->add_flag("--strict", check_strict, "enforce the simple-type condition x^2 = c1^2");

    // surgery
    auto* surgery_cmd = app.add_subcommand("surgery", "apply a transformation law");
    surgery_cmd->require_subcommand(1);
    std::string s_in, s_in2, s_out, s_t1 = "1", s_t2 = "1", s_alex = "1,-1,1";
    long long s_b1 = 0, s_p = 2;

    auto* bl_cmd = surgery_cmd->add_subcommand("blowup", "connected sum with CP2bar");
    bl_cmd->add_option("input", s_in, "manifold file or catalog name")->required();
    bl_cmd->add_option("-o,--out", s_out, "output file (default stdout)");

    auto* fs_cmd = surgery_cmd->add_subcommand("fibersum", "fiber sum along square-zero tori");
    fs_cmd->add_option("input1", s_in, "first manifold")->required();
    fs_cmd->add_option("input2", s_in2, "second manifold")->required();
    fs_cmd->add_option("--t1", s_t1, "torus class coords in the first lattice (default 1)");
    fs_cmd->add_option("--t2", s_t2, "torus class coords in the second lattice (default 1)");
    fs_cmd->add_option("--b1", s_b1, "b1 of the result (default 0)");
    fs_cmd->add_option("-o,--out", s_out, "output file (default stdout)");

    auto* kn_cmd = surgery_cmd->add_subcommand("knot", "knot surgery (external-formula)");
    kn_cmd->add_option("input", s_in, "manifold file or catalog name")->required();
    kn_cmd->add_option("--t", s_t1, "torus class coords (default 1)");
    kn_cmd->add_option("--alexander", s_alex,
                       "symmetric Alexander coefficients a_{-d}..a_d (default trefoil 1,-1,1)");
    kn_cmd->add_option("-o,--out", s_out, "output file (default stdout)");

    auto* lt_cmd = surgery_cmd->add_subcommand("logt", "generalized log transform (external-formula)");
    lt_cmd->add_option("input", s_in, "manifold file or catalog name")->required();
    lt_cmd->add_option("--t", s_t1, "torus class coords (default 1)");
    lt_cmd->add_option("--p", s_p, "multiplicity p >= 1 (default 2)");
    lt_cmd->add_option("-o,--out", s_out, "output file (default stdout)");

    // geography
    auto* geo_cmd = app.add_subcommand("geography", "per-model records and (chi_h, c1^2) scatter data");
    std::vector<std::string> geo_inputs;
    std::string geo_csv;
    geo_cmd->add_option("inputs", geo_inputs, "manifold files or catalog names")->required();
    geo_cmd->add_option("--csv", geo_csv, "write the scatter dataset to this path");

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "Seiberg-Witten curve diagnostics");
    curve_cmd->require_subcommand(1);
    std::string curve_m = "1.6", curve_q = "period", curve_radii = "1e-3,1e-4,1e-5,1e-6";
    auto* roots_cmd = curve_cmd->add_subcommand("roots", "discriminant roots and fiber data");
    roots_cmd->add_option("--m", curve_m, "complex mass RE[,IM]")->required();
    auto* scal_cmd = curve_cmd->add_subcommand("scaling", "fit cusp scaling exponents");
    scal_cmd->add_option("--quantity", curve_q, "period|g2_at_cusp_roots|delta_prime|delta_u")
        ->required();
    scal_cmd->add_option("--radii", curve_radii, "decreasing positive radii (default 1e-3..1e-6)");

    // zdw
    auto* zdw_cmd = app.add_subcommand("zdw", "Donaldson-Witten partition function engine");
    zdw_cmd->require_subcommand(1);
    ZdwCliArgs zargs;
    LaurentOptions zopt;
    std::string z_csv, z_m = "1.51";
    auto* zl_cmd = zdw_cmd->add_subcommand("laurent", "contour-extract the Laurent spectrum");
    zl_cmd->add_option("input", zargs.input, "manifold file or catalog name")->required();
    zl_cmd->add_option("--p", zargs.p_text, "degree-4 observable coefficient RE[,IM] (default 0)");
    zl_cmd->add_option("--s", zargs.s_text,
                       "degree-2 direction: components RE[,IM] separated by ';'");
    zl_cmd->add_option("--k", zargs.k_text, "normalization constant (default 1)");
    zl_cmd->add_option("--radius", zopt.radius, "contour radius (default 1e-2)");
    zl_cmd->add_option("--radius2", zopt.radius2, "stability contour radius (default 5e-3)");
    zl_cmd->add_option("--samples", zopt.samples, "contour samples, power of two >= 8*nmax");
    zl_cmd->add_option("--nmax", zopt.nmax, "coefficient range [-nmax, nmax] (default 8)");
    zl_cmd->add_option("--csv", z_csv, "write the coefficient table to this path");

    auto* ze_cmd = zdw_cmd->add_subcommand("eval", "pointwise evaluation with fiber breakdown");
    ze_cmd->add_option("input", zargs.input, "manifold file or catalog name")->required();
    ze_cmd->add_option("--m", z_m, "complex mass RE[,IM]")->required();
    ze_cmd->add_option("--p", zargs.p_text, "degree-4 observable coefficient RE[,IM]");
    ze_cmd->add_option("--s", zargs.s_text, "degree-2 direction components");
    ze_cmd->add_option("--k", zargs.k_text, "normalization constant");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) return cmd_catalog_list();
        if (show_cmd->parsed()) return cmd_catalog_show(show_name, show_json);
        if (check_cmd->parsed()) return cmd_check(check_inputs, check_strict);
        if (bl_cmd->parsed()) {
            emit_model(blowup(load_model(s_in)), s_out);
            return kExitOk;
        }
        if (fs_cmd->parsed()) {
            FourManifoldModel a = load_model(s_in), b = load_model(s_in2);
            emit_model(fiber_sum(a, parse_coords(s_t1), b, parse_coords(s_t2), s_b1), s_out);
            return kExitOk;
        }
        if (kn_cmd->parsed()) {
            FourManifoldModel a = load_model(s_in);
            emit_model(knot_surgery(a, parse_coords(s_t1), parse_coords(s_alex)), s_out);
            return kExitOk;
        }
        if (lt_cmd->parsed()) {
            FourManifoldModel a = load_model(s_in);
            emit_model(log_transform(a, parse_coords(s_t1), s_p), s_out);
            return kExitOk;
        }
        if (geo_cmd->parsed()) return cmd_geography(geo_inputs, geo_csv);
        if (roots_cmd->parsed()) return cmd_curve_roots(curve_m);
        if (scal_cmd->parsed()) return cmd_curve_scaling(curve_q, curve_radii);
        if (zl_cmd->parsed()) return cmd_zdw_laurent(zargs, zopt, z_csv);
        if (ze_cmd->parsed()) return cmd_zdw_eval(zargs, z_m);
    } catch (const ContourError& e) {
        std::cerr << "contour error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
