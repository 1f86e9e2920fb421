#include "ratode/autonomous.hpp"
#include "ratode/functional.hpp"
#include "ratode/polyalg.hpp"
#include "ratode/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace ratode;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { Ok = 0, Error = 1, Undecided = 2 };

struct Options {
    std::string command;
    std::string input;
    std::string format = "json";
    std::string param_file;
    std::string solution;
    std::string at;
    std::string out_dir;
    unsigned degree_bound = 6;
    unsigned trials = 10;
    unsigned seed = 1;
    unsigned ansatz_degree = 3;
    unsigned kovacic_cap = 50;
    bool surjective = false;
    unsigned jobs = 0;
};

struct Outcome {
    int code = Ok;
    json result;
    std::string text;
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProblemSpec load(const std::string& path, const Options& opt) {
    ProblemSpec spec = parse_problem(read_file(path));
    if (!opt.param_file.empty()) {
        auto extra = parse_param_file(read_file(opt.param_file), spec);
        spec.user_parametrizations.insert(spec.user_parametrizations.end(), extra.begin(), extra.end());
    }
    return spec;
}

json describe_problem(const std::string& path, const ProblemSpec& spec) {
    json p;
    p["file"] = fs::path(path).filename().string();
    p["F"] = render_ode(spec.F);
    json params = json::array();
    for (auto v : spec.constant_params) params.push_back(v.name());
    p["params"] = params;
    if (spec.has_functional()) {
        json rules = json::array();
        for (auto& r : spec.functional_params) {
            json jr{{"name", r.name.name()}, {"derivative", render(r.q)}};
            auto m = spec.meanings.find(r.name.name());
            if (m != spec.meanings.end()) jr["meaning"] = m->second;
            rules.push_back(jr);
        }
        p["rules"] = rules;
    }
    p["user_parametrizations"] = spec.user_parametrizations.size();
    return p;
}

std::map<Var, Rat> parse_point(const std::string& text) {
    std::map<Var, Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Failure("--at expects name=value pairs, got '" + item + "'");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        out[Var::named(trim(item.substr(0, eq)))] = parse_rat(trim(item.substr(eq + 1)));
    }
    return out;
}

void require_point(const std::map<Var, Rat>& pt, const ProblemSpec& spec) {
    for (auto v : spec.constant_params)
        if (!pt.count(v)) throw Failure("--at is missing a value for " + v.name());
}

// Independent check of every emitted family before it is reported.
bool reverify(const ProblemSpec& spec, const ComponentReport& r) {
    if (!r.family) return true;
    MPoly F = spec.F.substitute(r.substitution);
    return verify_solution(F, r.family->closed_form, {}, r.family->P.radicand).exact_zero;
}

std::string text_component(const ComponentReport& r) {
    std::string s = "  [" + std::string(status_name(r.status)) + "] " + describe(r.component);
    if (r.family) s += "\n      y = " + render_solution(r.family->closed_form);
    if (r.parametrization && !r.family) s += "\n      P = " + render_pair(r.parametrization->p1, r.parametrization->p2);
    if (!r.reason.empty()) s += "\n      " + r.reason;
    return s + "\n";
}

Outcome solve_constant(const std::string& path, const Options& opt) {
    ProblemSpec spec = load(path, opt);
    SolveOptions so;
    so.seed = opt.seed;
    auto d = constant_parameter_solve(spec, so);
    Outcome out;
    out.result = to_json(d);
    bool all_ok = true;
    for (auto& r : d.ps3) all_ok = all_ok && reverify(spec, r);
    out.result["reverified"] = all_ok;
    if (!all_ok) throw Failure("an emitted solution failed re-verification");
    out.code = d.undecided.empty() ? Ok : Undecided;
    std::string t = "PS1: " + (d.ps1.is_empty() ? std::string("empty") : std::to_string(d.ps1.components.size()) + " component(s)") + "\n";
    t += "PS2:\n";
    for (auto& r : d.ps2) t += text_component(r);
    t += "PS3:\n";
    for (auto& r : d.ps3) t += text_component(r);
    for (auto& r : d.undecided) t += text_component(r);
    out.text = t;
    return out;
}

Outcome decompose(const std::string& path, const Options& opt) {
    ProblemSpec spec = load(path, opt);
    SolveOptions so;
    so.seed = opt.seed;
    so.surjective = opt.surjective;
    auto d = decompose_parametrizations(spec, so);
    Outcome out;
    out.result = to_json(d);
    out.code = d.undecided.empty() ? Ok : Undecided;
    std::string t = "reducible:\n";
    for (auto& r : d.ps2) t += text_component(r);
    t += "parametrized:\n";
    for (auto& r : d.ps3) t += text_component(r);
    for (auto& r : d.undecided) t += text_component(r);
    out.text = t;
    return out;
}

Outcome solve_functional(const std::string& path, const Options& opt) {
    ProblemSpec spec = load(path, opt);
    if (!spec.has_functional()) throw Failure("solve-functional needs at least one 'rule:' line");
    FunctionalOptions fo;
    fo.kovacic.degree_cap = opt.kovacic_cap;
    fo.ansatz_degree = opt.ansatz_degree;
    auto r = functional_coefficient_solve(spec, fo);
    Outcome out;
    out.result = to_json(r);
    bool ok = true;
    if (r.y) ok = verify_solution(spec.F, *r.y, spec.functional_params, r.parametrization->radicand).exact_zero;
    for (auto& p : r.particular)
        ok = ok && verify_solution(spec.F, p.y, spec.functional_params,
                                   p.y.depends_on(vars::delta()) && r.parametrization ? r.parametrization->radicand : RatFn())
                       .exact_zero;
    out.result["reverified"] = ok;
    if (!ok) throw Failure("an emitted solution failed re-verification");
    out.code = r.status == FunctionalStatus::Srgs ? Ok : Undecided;
    std::string t = "status: " + std::string(functional_status_name(r.status)) + "\n";
    if (r.riccati)
        t += "riccati: w' = " + render(r.riccati->g0) + " + (" + render(r.riccati->g1) + ")*w + (" +
             render(r.riccati->g2) + ")*w^2\n";
    if (r.w) t += "w = " + render(*r.w) + "\n";
    if (r.y) t += "y = " + render_with_meanings(*r.y, r.meanings) + "\n";
    for (auto& p : r.particular) t += "particular: y = " + render_with_meanings(p.y, r.meanings) + "\n";
    if (!r.reason.empty()) t += "reason: " + r.reason + "\n";
    out.text = t;
    return out;
}

Outcome parametrize(const std::string& path, const Options& opt) {
    ProblemSpec spec = load(path, opt);
    Outcome out;
    std::optional<Parametrization> P;
    std::string source;
    for (auto& up : spec.user_parametrizations) {
        Parametrization Q{up.p1, up.p2, RatFn()};
        if (verify_parametrization(spec.F, Q)) {
            P = Q;
            source = "user (line " + std::to_string(up.line) + ")";
            break;
        }
    }
    std::string reason;
    if (!P) {
        try {
            auto r = parametrize_special(spec.F);
            if (auto* p = std::get_if<Parametrization>(&r)) {
                P = *p;
                source = "computed";
            } else {
                reason = std::get<Unsupported>(r).reason;
            }
        } catch (const ReducibleCurve& e) {
            reason = std::string("reducible: ") + e.what();
        }
    }
    if (!P) {
        out.code = Undecided;
        out.result = {{"status", "unsupported"}, {"reason", reason}};
        out.text = "unsupported: " + reason + "\n";
        return out;
    }
    json j;
    j["status"] = "parametrized";
    j["parametrization"] = render_pair(P->p1, P->p2);
    if (P->uses_delta()) j["delta_squared"] = render(P->radicand);
    j["source"] = source;
    j["verified"] = verify_parametrization(spec.F, *P);
    unsigned idx = tracing_index(*P);
    j["tracing_index"] = idx;
    if (idx == 1) {
        auto cp = critical_point(*P);
        j["critical_point"] = cp ? json(render_pair(cp->y, cp->z)) : json(nullptr);
    }
    out.result = j;
    out.text = "P = " + render_pair(P->p1, P->p2) + " (" + source + ", tracing index " + std::to_string(idx) + ")\n";
    return out;
}

Outcome verify(const std::string& path, const Options& opt) {
    if (opt.solution.empty()) throw Failure("verify needs --solution");
    ProblemSpec spec = load(path, opt);
    RatFn y = parse_ratfn(opt.solution);
    MPoly F = spec.F;
    if (!opt.at.empty()) {
        auto pt = parse_point(opt.at);
        F = F.evaluate(pt);
        auto ys = specialize(y, pt);
        if (!ys) throw Failure("solution is undefined at the point");
        y = *ys;
    }
    auto rep = verify_solution(F, y, spec.functional_params);
    Outcome out;
    out.result = {{"solution", render(y)}, {"exact_zero", rep.exact_zero}, {"residual", render(rep.residual)}};
    if (!opt.at.empty()) out.result["point"] = opt.at;
    out.code = rep.exact_zero ? Ok : Undecided;
    out.text = rep.exact_zero ? "exact zero\n" : "residual: " + render(rep.residual) + "\n";
    return out;
}

Outcome specialize_cmd(const std::string& path, const Options& opt) {
    ProblemSpec spec = load(path, opt);
    auto pt = parse_point(opt.at);
    require_point(pt, spec);
    SolveOptions so;
    so.seed = opt.seed;
    auto d = constant_parameter_solve(spec, so);
    Outcome out;
    json j;
    j["point"] = opt.at;
    auto report = [&](const ComponentReport& r, const char* where) {
        j["set"] = where;
        j["component"] = to_json(r.component);
        j["status"] = status_name(r.status);
        out.text = std::string(where) + ": " + describe(r.component) + " [" + std::string(status_name(r.status)) + "]\n";
    };
    if (membership(pt, d.ps1)) {
        j["set"] = "ps1";
        out.text = "ps1: F degenerates\n";
    }
    for (auto& r : d.ps2)
        if (membership(pt, r.component)) report(r, "ps2");
    for (auto& r : d.ps3)
        if (membership(pt, r.component)) {
            report(r, "ps3");
            auto y = specialize_solution(*r.family, pt);
            if (!y) throw Failure("specialization of the family is undefined at the point");
            MPoly F = spec.F.evaluate(pt);
            bool ok = verify_solution(F, *y, {}, RatFn()).exact_zero;
            if (!ok) throw Failure("specialized solution failed verification");
            j["solution"] = render_solution(*y);
            j["exact_zero"] = ok;
            out.text += "  y = " + render_solution(*y) + "\n";
        }
    for (auto& r : d.undecided)
        if (membership(pt, r.component)) {
            report(r, "undecided");
            out.code = Undecided;
        }
    if (!j.contains("set")) {
        j["set"] = "none";
        out.code = Undecided;
        out.text = "point not covered by a decided component\n";
    }
    out.result = j;
    return out;
}

Outcome oracle(const std::string& path, const Options& opt) {
    ProblemSpec spec = load(path, opt);
    auto pt = parse_point(opt.at);
    require_point(pt, spec);
    MPoly F = spec.F.evaluate(pt);
    auto found = series_oracle(F, {opt.degree_bound, opt.trials, opt.seed});
    Outcome out;
    json sols = json::array();
    std::string t;
    for (auto& y : found) {
        sols.push_back(render(y));
        t += "y = " + render(y) + "\n";
    }
    out.result = {{"degree_bound", opt.degree_bound}, {"trials", opt.trials}, {"seed", opt.seed}, {"solutions", sols}};
    out.text = t.empty() ? "no rational solution found\n" : t;
    return out;
}

Outcome run_one(const std::string& path, const Options& opt, json& problem) {
    ProblemSpec spec = load(path, opt);
    problem = describe_problem(path, spec);
    if (opt.command == "solve-constant") return solve_constant(path, opt);
    if (opt.command == "decompose") return decompose(path, opt);
    if (opt.command == "solve-functional") return solve_functional(path, opt);
    if (opt.command == "parametrize") return parametrize(path, opt);
    if (opt.command == "verify") return verify(path, opt);
    if (opt.command == "specialize") return specialize_cmd(path, opt);
    if (opt.command == "oracle") return oracle(path, opt);
    throw Failure("unknown command " + opt.command);
}

struct FileReport {
    std::string file;
    int code = Ok;
    json wrapped;
    std::string text;
};

FileReport process(const std::string& path, const Options& opt) {
    FileReport fr;
    fr.file = path;
    json problem = {{"file", fs::path(path).filename().string()}};
    try {
        Outcome o = run_one(path, opt, problem);
        fr.code = o.code;
        fr.wrapped = {{"problem", problem}, {"result", o.result}, {"version", kVersion}};
        fr.text = o.text;
    } catch (const ParseError& e) {
        fr.code = Error;
        std::string what = e.what();
        std::string prefix = "line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ": ";
        if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
        std::string msg = path + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + what;
        fr.wrapped = {{"problem", problem}, {"error", msg}, {"version", kVersion}};
        fr.text = "error: " + msg + "\n";
    } catch (const std::exception& e) {
        fr.code = Error;
        std::string msg = path + ": " + e.what();
        fr.wrapped = {{"problem", problem}, {"error", msg}, {"version", kVersion}};
        fr.text = "error: " + msg + "\n";
    }
    return fr;
}

void write_atomic(const fs::path& target, const std::string& content) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Failure("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

std::string emit(const FileReport& fr, const Options& opt) {
    if (opt.format == "text") return fr.text;
    return fr.wrapped.dump(2) + "\n";
}

int combine(int a, int b) {
    if (a == Error || b == Error) return Error;
    if (a == Undecided || b == Undecided) return Undecided;
    return Ok;
}

int run_batch(const Options& opt) {
    std::vector<std::string> files;
    for (auto& e : fs::directory_iterator(opt.input))
        if (e.is_regular_file() && e.path().extension() == ".ode") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<FileReport> reports(files.size());
    std::atomic<std::size_t> next{0};
    unsigned n = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i)
        pool.emplace_back([&] {
            for (std::size_t k; (k = next++) < files.size();) reports[k] = process(files[k], opt);
        });
    for (auto& t : pool) t.join();
    int code = Ok;
    json all = json::array();
    std::string text;
    for (auto& fr : reports) {
        code = combine(code, fr.code);
        if (!opt.out_dir.empty()) {
            fs::create_directories(opt.out_dir);
            fs::path target = fs::path(opt.out_dir) / fs::path(fr.file).filename().replace_extension(".json");
            write_atomic(target, emit(fr, opt));
        }
        json entry = fr.wrapped;
        entry["exit_code"] = fr.code;
        all.push_back(entry);
        text += "== " + fs::path(fr.file).filename().string() + " (exit " + std::to_string(fr.code) + ")\n" + fr.text;
    }
    if (opt.format == "text") std::cout << text;
    else std::cout << json{{"batch", all}, {"version", kVersion}}.dump(2) << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational solutions of parametric first-order algebraic ODEs"};
    app.require_subcommand(1);
    Options opt;
    struct Cmd {
        const char* name;
        const char* help;
    };
    const Cmd cmds[] = {
        {"solve-constant", "decompose the parameter space with respect to rational solutions"},
        {"decompose", "decompose the parameter space with respect to proper parametrizations"},
        {"solve-functional", "strong rational general solution for functional coefficients"},
        {"parametrize", "proper rational parametrization of the curve"},
        {"verify", "substitute a solution given with --solution"},
        {"specialize", "solution at the parameter point given with --at"},
        {"oracle", "series/Pade search at the parameter point given with --at"},
    };
    for (auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("input", opt.input, "problem file or directory of .ode files")->required();
        sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--param-file", opt.param_file, "file with 'param:' lines");
        sub->add_option("--degree-bound", opt.degree_bound, "oracle Pade degree bound");
        sub->add_option("--trials", opt.trials, "oracle initial points");
        sub->add_option("--seed", opt.seed, "sampling seed");
        sub->add_option("--ansatz-degree", opt.ansatz_degree, "total degree of the ansatz for several coefficients");
        sub->add_option("--kovacic-cap", opt.kovacic_cap, "largest polynomial degree tried in the Riccati step");
        sub->add_option("--solution", opt.solution, "candidate solution for verify");
        sub->add_option("--at", opt.at, "parameter point, e.g. a1=1,a2=-1/2");
        sub->add_option("--out-dir", opt.out_dir, "batch mode: write one report per file");
        sub->add_option("--jobs", opt.jobs, "batch mode: worker threads");
        sub->add_flag("--surjective", opt.surjective, "decompose: attach surjective coverings");
        sub->callback([&opt, name = std::string(c.name)] { opt.command = name; });
    }
    CLI11_PARSE(app, argc, argv);
    try {
        if (fs::is_directory(opt.input)) return run_batch(opt);
        FileReport fr = process(opt.input, opt);
        if (fr.code == Error) std::cerr << fr.text;
        if (fr.code != Error || opt.format == "json") std::cout << emit(fr, opt);
        return fr.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Error;
    }
}
