// Command-line surface: membership checks, invariant evaluation, realization,
// coherence, reconstruction, curve tracing and the built-in figure-eight
// example.  Exit codes: 0 success, 1 negative verdict, 2 input error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "orthocalc/develop.hpp"
#include "orthocalc/fig8.hpp"
#include "orthocalc/trace.hpp"

using namespace orthocalc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Options {
    double tol = default_tol().eps;
    unsigned long long seed = 0;
    std::string output = "json";
};

// "3", "1+2i", "-0.5-1.5i", "2i", "-i"
cplx parse_complex(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty complex literal");
    if (t.back() != 'i' && t.back() != 'I') {
        size_t used = 0;
        double re = std::stod(t, &used);
        if (used != t.size()) throw ParseError("bad complex literal: " + s);
        return {re, 0};
    }
    t.pop_back();  // drop the i
    // split at the last +/- that is not an exponent sign or leading
    size_t split = std::string::npos;
    for (size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto parse_or_unit = [](std::string part, double unit) {
        if (part.empty() || part == "+") return unit;
        if (part == "-") return -unit;
        size_t used = 0;
        double v = std::stod(part, &used);
        if (used != part.size()) throw ParseError("bad complex literal");
        return v;
    };
    if (split == std::string::npos) return {0, parse_or_unit(t, 1.0)};
    double re;
    {
        size_t used = 0;
        re = std::stod(t.substr(0, split), &used);
        if (used != split) throw ParseError("bad complex literal: " + s);
    }
    return {re, parse_or_unit(t.substr(split), 1.0)};
}

json load_json_arg(const std::string& arg) {
    std::string s = arg;
    size_t k = s.find_first_not_of(" \t\n");
    if (k != std::string::npos && (s[k] == '[' || s[k] == '{')) {
        try {
            return json::parse(s);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad inline JSON: ") + e.what());
        }
    }
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open " + arg);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw ParseError("bad JSON in " + arg + ": " + e.what());
    }
}

Triangulation load_tri_arg(const std::string& arg) {
    if (arg == "fig8") return fig8::triangulation();
    json j = load_json_arg(arg);
    Triangulation t = triangulation_from_json(j);
    auto bad = t.validate();
    if (!bad.empty()) {
        for (const auto& msg : bad)
            if (msg.find("glued") != std::string::npos ||
                msg.find("permutation") != std::string::npos)
                throw InvalidGluing(msg);
        for (const auto& msg : bad)
            if (msg.find("edge class") != std::string::npos)
                throw EdgeClassMismatch(msg);
        throw ParseError(bad.front());
    }
    return t;
}

void emit_pretty(const json& j, std::ostream& os, int indent = 0) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << pad << it.key() << ":";
            if (it.value().is_structured()) {
                os << "\n";
                emit_pretty(it.value(), os, indent + 2);
            } else {
                os << " " << it.value().dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_structured()) {
                emit_pretty(v, os, indent + 2);
                os << "\n";
            } else {
                os << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

void emit(const Options& opt, const json& j) {
    if (opt.output == "pretty")
        emit_pretty(j, std::cout);
    else
        std::cout << j.dump(2) << "\n";
}

json lines_to_json(const LineConfig& lines) {
    json out = json::array();
    for (const auto& l : lines) out.push_back(to_json(l.mat()));
    return out;
}

json realization_to_json(const HextetRealization& r) {
    json tets = json::array();
    for (const auto& tet : r.tets) {
        json lines = json::array();
        for (const auto& l : tet) lines.push_back(to_json(l.mat()));
        tets.push_back(lines);
    }
    return json{{"tets", tets}};
}

int cmd_check(const Options& opt, const std::string& tri_arg,
              const std::string& params_arg) {
    Triangulation t = load_tri_arg(tri_arg);
    OrthParams p = params_from_json(load_json_arg(params_arg));
    if (static_cast<int>(p.size()) != t.num_edge_classes)
        throw ParseError("parameter count does not match edge-class count");
    json residuals = json::array();
    for (cplx r : hextet_residuals(t, p)) residuals.push_back(to_json(r));
    bool pk = in_PK(t, p, opt.tol);
    bool s = in_S(t, p, opt.tol);
    bool tt = in_T(p, opt.tol);
    json out{{"residuals", residuals},
             {"in_PK", pk},
             {"in_S", s},
             {"in_T", tt}};
    if (tt)
        out["warning"] =
            "some coordinate equals +-1: rigidity and coherence do not apply";
    emit(opt, out);
    return pk ? kExitOk : kExitVerdict;
}

int cmd_orth(const Options& opt, const std::string& rep_arg) {
    json j = load_json_arg(rep_arg);
    if (!j.contains("h") || !j.contains("edges"))
        throw ParseError("representation needs fields h and edges");
    SL2 h(mat2_from_json(j["h"]), 1e-6);
    EdgeHolonomyData data{h, {}};
    for (const auto& m : j["edges"]) data.g.emplace_back(mat2_from_json(m), 1e-6);
    if (j.contains("l")) {
        SL2 l(mat2_from_json(j["l"]), 1e-6);
        if (!admissible(h, l)) throw Inadmissible();
    }
    OrthInvariant inv = orth_invariant(data);
    json coshd = json::array();
    for (cplx v : inv.coshd) coshd.push_back(to_json(v));
    emit(opt, json{{"cosh_d", coshd}});
    return kExitOk;
}

int cmd_realize(const Options& opt, const std::string& gram_arg) {
    GramMatrix X = gram_from_json(load_json_arg(gram_arg));
    LineConfig lines = realize(X);
    double worst = 0;
    for (int i = 0; i < X.n; ++i)
        for (int j = 0; j < X.n; ++j)
            worst = std::max(worst, std::abs(form(lines[i], lines[j]) - X.x[i][j]));
    emit(opt, json{{"lines", lines_to_json(lines)},
                   {"rank", rank(X)},
                   {"max_residual", worst}});
    return kExitOk;
}

int cmd_coherent(const Options& opt, const std::string& tri_arg,
                 const std::string& params_arg) {
    Triangulation t = load_tri_arg(tri_arg);
    OrthParams p = params_from_json(load_json_arg(params_arg));
    auto r = find_coherent(t, p, opt.tol);
    if (!r) {
        emit(opt, json{{"verdict", "NotCoherent"}});
        return kExitVerdict;
    }
    json out = realization_to_json(*r);
    out["verdict"] = "Coherent";
    emit(opt, out);
    return kExitOk;
}

int cmd_reconstruct(const Options& opt, const std::string& tri_arg,
                    const std::string& params_arg) {
    Triangulation t = load_tri_arg(tri_arg);
    OrthParams p = params_from_json(load_json_arg(params_arg));
    RoundTrip rt = orth_roundtrip(t, p, opt.tol);
    json gens = json::array();
    for (const SL2& g : rt.generators) gens.push_back(to_json(g.mat()));
    json coshd = json::array();
    for (cplx v : rt.coshd) coshd.push_back(to_json(v));
    json out{{"generators", gens},
             {"cosh_d", coshd},
             {"max_residual", rt.max_param_residual},
             {"closure_residual", rt.max_closure_residual},
             {"s_locus", rt.s_locus}};
    if (rt.s_locus)
        out["warning"] = "parameters lie in the multiple-degeneracy locus; "
                         "the reconstruction may not be unique";
    emit(opt, out);
    return kExitOk;
}

int cmd_trace(const Options& opt, const std::string& tri_arg,
              const std::string& start_arg, const std::string& dir_arg,
              double step, int max_steps, double ctol) {
    Triangulation t = load_tri_arg(tri_arg);
    TraceRun run;
    run.start = params_from_json(load_json_arg(start_arg));
    if (!dir_arg.empty())
        run.direction = params_from_json(load_json_arg(dir_arg));
    run.step = step;
    run.max_steps = max_steps;
    run.tol = ctol;
    if (!in_PK(t, run.start, std::max(opt.tol, 1e-6))) throw NotInPK();
    TraceResult res = trace_curve(t, run);
    json pts = json::array();
    for (const auto& q : res.points) pts.push_back(params_to_json(q));
    const char* reason = res.reason == StopReason::MaxSteps ? "max_steps"
                         : res.reason == StopReason::TProximity
                             ? "t_proximity"
                             : "corrector_diverged";
    emit(opt, json{{"points", pts}, {"stop", reason}});
    return res.reason == StopReason::CorrectorDiverged && res.points.empty()
               ? kExitNumerical
               : kExitOk;
}

int fig8_selftest(const Options& opt);

int cmd_fig8(const Options& opt, const std::string& v_arg, bool selftest) {
    if (selftest) return fig8_selftest(opt);
    if (v_arg.empty()) throw ParseError("fig8 needs --V or --selftest");
    cplx V = parse_complex(v_arg);
    OrthParams p = fig8::orth_map(V, opt.tol);
    const Triangulation& t = fig8::triangulation();
    fig8::CharPoint c{fig8::curve_U(V, opt.tol), V};
    json out{{"U", to_json(c.U)},
             {"V", to_json(c.V)},
             {"p0", to_json(p[0])},
             {"p1", to_json(p[1])},
             {"in_PK", in_PK(t, p, std::max(opt.tol, 1e-7))},
             {"in_S", in_S(t, p, 1e-7)},
             {"in_T", in_T(p, 1e-7)}};
    if (!in_T(p, 1e-7)) {
        RoundTrip rt = orth_roundtrip(t, p, opt.tol);
        double resid = rt.max_param_residual;
        for (int e = 0; e < 2; ++e)
            resid = std::max(resid, std::abs(rt.coshd[e] - p[e]));
        out["roundtrip_residual"] = resid;
    }
    emit(opt, out);
    return kExitOk;
}

int fig8_selftest(const Options& opt) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    };

    // polynomial identity on a grid
    double worst = 0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            cplx p0(-2.0 + 0.21 * i, 0.05 * j);
            cplx p1(1.9 - 0.2 * j, -0.07 * i);
            worst = std::max(worst, std::abs(fig8::hextet_poly(p0, p1) -
                                             fig8::quartic(p0, p1)));
            worst = std::max(worst, std::abs(fig8::quartic(p0, p1) -
                                             fig8::factored(p0, p1)));
        }
    report("hextet polynomial = quartic = factored form (grid)", worst < 1e-8);

    // map values
    OrthParams p3 = fig8::orth_map(3);
    report("orth_map(3) = (-1/3, 5/3)",
           std::abs(p3[0] + 1.0 / 3.0) < 1e-12 &&
               std::abs(p3[1] - 5.0 / 3.0) < 1e-12);
    OrthParams p2 = fig8::orth_map(2);
    report("orth_map(2) = (1, 1)",
           std::abs(p2[0] - 1.0) < 1e-12 && std::abs(p2[1] - 1.0) < 1e-12);

    // image on the conic
    worst = 0;
    for (int k = 0; k < 100; ++k) {
        cplx V(2.2 + 0.03 * k, 0.011 * k);
        OrthParams p = fig8::orth_map(V);
        cplx conic = p[0] * p[0] + p[1] * p[1] + p[0] * p[1] - p[0] - p[1] - 1.0;
        worst = std::max(worst, std::abs(conic));
    }
    report("orth_map image satisfies the conic", worst < 1e-10);

    // inverse round trip
    worst = 0;
    for (int k = 0; k < 50; ++k) {
        cplx V(2.3 + 0.05 * k, 0.5 + 0.01 * k);
        OrthParams p = fig8::orth_map(V);
        worst = std::max(worst, std::abs(fig8::orth_inverse(p).V - V));
    }
    report("orth_inverse recovers V", worst < 1e-9);

    // S locus at V = (-1 +- sqrt 5)/2
    const double r5 = std::sqrt(5.0);
    bool s_ok = true;
    for (double sgn : {+1.0, -1.0}) {
        cplx V(0.5 * (-1.0 + sgn * r5), 0);
        OrthParams p = fig8::orth_map(V);
        s_ok = s_ok && in_S(fig8::triangulation(), p, 1e-7);
    }
    report("S locus at V = (-1 +- sqrt5)/2", s_ok);

    // reconstruction round trip
    for (cplx V : {cplx(2.5, 0), cplx(3, 0), cplx(4, 0), cplx(1, 2)}) {
        OrthParams p = fig8::orth_map(V);
        RoundTrip rt = orth_roundtrip(fig8::triangulation(), p);
        double resid = rt.max_param_residual;
        resid = std::max(resid, rt.max_closure_residual);
        std::ostringstream name;
        name << "reconstruction round trip at V = " << V.real();
        if (V.imag() != 0) name << "+" << V.imag() << "i";
        report(name.str(), resid < 1e-8);
    }

    // representation relation
    {
        fig8::KnotGroupRep r = fig8::rep_on_curve(cplx(3, 0));
        report("knot-group relation at V = 3", fig8::relation_residual(r) < 1e-8);
        fig8::KnotGroupRep off = fig8::rep_from_traces(cplx(3, 0), cplx(0, 0));
        report("relation residual detects off-variety point",
               fig8::relation_residual(off) > 1e-2);
    }
    (void)opt;
    std::cout << (failures == 0 ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return failures == 0 ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ortholength invariant toolkit for ideal triangulations"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--tol", opt.tol, "geometric tolerance")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for randomized operations")
        ->capture_default_str();
    app.add_option("--output", opt.output, "output style: json or pretty")
        ->check(CLI::IsMember({"json", "pretty"}))
        ->capture_default_str();

    std::string tri_arg, params_arg, rep_arg, gram_arg, start_arg, dir_arg,
        v_arg;
    double step = 0.05, ctol = 1e-10;
    int max_steps = 100;
    bool selftest = false;

    auto* check = app.add_subcommand(
        "check", "hextet residuals and P(K)/S/T membership of parameters");
    check->add_option("--tri", tri_arg,
                      "triangulation JSON file, inline JSON, or 'fig8'")
        ->required();
    check->add_option("--params", params_arg,
                      "parameters: JSON file or inline [[re,im],...]")
        ->required();

    auto* orth = app.add_subcommand(
        "orth", "ortholength invariant of a representation");
    orth->add_option("--rep", rep_arg,
                     "representation JSON {\"h\": mat, \"edges\": [mat,...]}; "
                     "matrices are row-major arrays of [re,im]")
        ->required();

    auto* realize_cmd =
        app.add_subcommand("realize", "line configuration from a Gram matrix");
    realize_cmd
        ->add_option("--gram", gram_arg,
                     "Gram matrix JSON {\"n\": int, \"entries\": [[[re,im],...],...]}")
        ->required();

    auto* coherent =
        app.add_subcommand("coherent", "search for a coherent realization");
    coherent->add_option("--tri", tri_arg, "triangulation")->required();
    coherent->add_option("--params", params_arg, "parameters")->required();

    auto* reconstruct = app.add_subcommand(
        "reconstruct", "holonomy generators and invariant round trip");
    reconstruct->add_option("--tri", tri_arg, "triangulation")->required();
    reconstruct->add_option("--params", params_arg, "parameters")->required();

    auto* trace =
        app.add_subcommand("trace", "numerical continuation along the variety");
    trace->add_option("--tri", tri_arg, "triangulation")->required();
    trace->add_option("--start", start_arg, "start parameters")->required();
    trace->add_option("--direction", dir_arg, "initial tangent phase hint");
    trace->add_option("--step", step, "predictor step length")
        ->capture_default_str();
    trace->add_option("--max-steps", max_steps, "step budget")
        ->capture_default_str();
    trace->add_option("--corrector-tol", ctol, "corrector residual target")
        ->capture_default_str();

    auto* fig8_cmd =
        app.add_subcommand("fig8", "built-in figure-eight knot complement");
    fig8_cmd->add_option("--V", v_arg,
                         "character coordinate V, e.g. \"3\" or \"1+2i\"");
    fig8_cmd->add_flag("--selftest", selftest, "run the regression suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(opt, tri_arg, params_arg);
        if (orth->parsed()) return cmd_orth(opt, rep_arg);
        if (realize_cmd->parsed()) return cmd_realize(opt, gram_arg);
        if (coherent->parsed()) return cmd_coherent(opt, tri_arg, params_arg);
        if (reconstruct->parsed())
            return cmd_reconstruct(opt, tri_arg, params_arg);
        if (trace->parsed())
            return cmd_trace(opt, tri_arg, start_arg, dir_arg, step, max_steps,
                             ctol);
        if (fig8_cmd->parsed()) return cmd_fig8(opt, v_arg, selftest);
    } catch (const NotCoherent&) {
        std::cerr << "NotCoherent\n";
        return kExitVerdict;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InvalidGluing& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const EdgeClassMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const RankTooHigh& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotInPK& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InTExcluded& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DenominatorVanishes& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PoleP0& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PoleV1& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParabolicNormalForm& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Inadmissible& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}
