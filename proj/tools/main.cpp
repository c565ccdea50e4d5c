#include "trielliptic/census.hpp"
#include "trielliptic/geometry.hpp"
#include "trielliptic/git.hpp"
#include "trielliptic/reports.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace tri;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    int jobs = 1;
    double budget = 0;
    long max_leaves = SearchOptions{}.max_leaves;
    long max_nodes = SearchOptions{}.max_nodes;
    std::uint64_t seed = 7;
    std::string out;
    bool no_timing = false;
    std::vector<std::string> argv;

    SearchOptions search() const { return {max_leaves, max_nodes, budget}; }
    RunManifest manifest() const {
        RunManifest m;
        m.command = argv;
        m.seed = seed;
        m.bounds = search();
        m.jobs = jobs;
        m.timing = !no_timing;
        return m;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes the report to --out (or stdout) with the manifest attached.
void emit(const Globals& g, Json report) {
    report["manifest"] = g.manifest().to_json();
    std::string text = dump(report);
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot write " + g.out);
    f << text;
}

Json base(const std::string& kind) { return Json{{"schemaVersion", kSchemaVersion}, {"report", kind}}; }

std::vector<CatalogEntry> lattice_file() {
    std::string path = catalog_dir() + "/niemeier.json";
    std::ifstream probe(path);
    if (!probe) return {};
    return load_lattice_catalog(path);
}

// Catalog file entries win over built-in names; SigmaN is the K3 complement.
IntegralLattice resolve_lattice(const std::string& name) {
    for (const auto& e : lattice_file())
        if (e.name == name) return e.lattice();
    std::smatch m;
    if (std::regex_match(name, m, std::regex(R"(Sigma([123]))"))) return build_sigma(std::stoi(m[1])).lattice;
    try {
        return catalog(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

FiniteQuadraticForm resolve_form(const std::string& name) {
    std::string path = catalog_dir() + "/forms.json";
    std::ifstream probe(path);
    if (probe)
        for (const auto& e : load_form_catalog(path))
            if (e.name == name) return e.form();
    return discriminant_form(resolve_lattice(name).gram());
}

SignKind parse_sign(const std::string& s) {
    if (s == "nonpositive") return SignKind::NONPOSITIVE;
    if (s == "negative") return SignKind::NEGATIVE;
    throw UsageError("--sign must be nonpositive or negative");
}

RatVec parse_point(const std::string& s) {
    RatVec p;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            p.push_back(parse_rat(tok));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (p.size() != 5) throw UsageError("--point needs 5 comma-separated coordinates x0,x1,y0,y1,y2");
    return p;
}

std::vector<IntVec> parse_vectors(const std::string& text) {
    std::vector<IntVec> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::stringstream ls(line);
        IntVec v;
        std::string tok;
        while (ls >> tok) {
            Int x;
            if (x.set_str(tok, 10) != 0) throw UsageError("not an integer: " + tok);
            v.push_back(x);
        }
        if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------- git

int git_families(const Globals& g, const std::string& sign, const std::string& format) {
    SignKind s = parse_sign(sign);
    auto fams = enumerate_maximal_families(s);
    if (format == "table") {
        std::cout << "label  lambda         maximal monomials\n";
        for (const auto& f : fams) {
            std::ostringstream mx;
            for (const auto& m : f.maximal_monomials) mx << (mx.tellp() ? ", " : "") << m.str();
            std::cout << std::left << std::setw(7) << f.label << std::setw(15) << f.witness_lambda.str() << mx.str()
                      << "\n";
        }
        return 0;
    }
    Json r = base("git-families");
    r["sign"] = to_string(s);
    r["families"] = Json::array();
    for (const auto& f : fams) r["families"].push_back(to_json(f));
    emit(g, r);
    return 0;
}

int git_classify(const Globals& g, const std::string& file) {
    Poly f;
    try {
        f = parse_biform(read_file(file));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Json r = base("git-classify");
    r["poly"] = f.str(bi::names());
    r["classification"] = to_json(classify_nonstable(f));
    emit(g, r);
    return 0;
}

int git_strata(const Globals& g) {
    Json r = base("git-strata-dims");
    r["rows"] = Json::array();
    for (const auto& row : dimension_table())
        r["rows"].push_back({{"label", row.label}, {"dim", row.dim}, {"method", row.method}});
    emit(g, r);
    return 0;
}

// ---------------------------------------------------------------- geom

int geom_verify(const Globals& g, const std::string& label, int samples) {
    const auto& labels = geometry_labels();
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) throw UsageError("unknown family " + label);
    auto v = verify_family(label, samples, g.seed);
    Json r = base("geom-verify-family");
    r["result"] = to_json(v);
    emit(g, r);
    return v.passed == v.samples ? 0 : 1;
}

int geom_analyze(const Globals& g, const std::string& file, const std::string& point) {
    Poly f;
    try {
        f = parse_biform(read_file(file));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Json r = base("geom-analyze");
    r["poly"] = f.str(bi::names());
    if (!point.empty()) {
        RatVec p = parse_point(point);
        auto c = corank_at(f, p);
        Json pj = {{"point", point}, {"singular", c.has_value()}};
        pj["corank"] = c ? Json(*c) : Json();
        pj["fiberCubic"] = to_string(classify_cubic(fiber_cubic(f, RatVec{p[0], p[1]})));
        r["point"] = pj;
    }
    Json fams = Json::array();
    for (const auto& l : geometry_labels()) {
        auto rep = check_geometry(l, f);
        if (rep.pass) fams.push_back(l);
    }
    r["characterizationsHolding"] = fams;
    Json nf = Json::array();
    for (const auto& l : normal_form_labels())
        if (matches_normal_form(f, l)) nf.push_back(l);
    r["normalForms"] = nf;
    r["classification"] = to_json(classify_nonstable(f));
    emit(g, r);
    return 0;
}

// ---------------------------------------------------------------- qf

int qf_picard(const Globals& g, const std::string& name) {
    auto f = resolve_form(name);
    auto sel = picard_rank(f);
    Json r = base("qf-picard");
    r["lattice"] = name;
    r["form"] = to_json(f);
    r["picard"] = to_json(sel);
    emit(g, r);
    return sel.chosen().integral() ? 0 : 1;
}

int qf_gauss(const Globals& g, const std::string& name, long m) {
    auto f = resolve_form(name);
    auto s = gauss_sum(m, f);
    auto z = s.evaluate();
    Json r = base("qf-gauss");
    r["lattice"] = name;
    r["m"] = m;
    r["exact"] = s.str();
    r["value"] = s.as_rational() ? Json(rat_str(*s.as_rational())) : Json();
    r["approx"] = {z.real(), z.imag()};
    emit(g, r);
    return 0;
}

int qf_census(const Globals& g, const std::string& name) {
    auto f = resolve_form(name);
    Json r = base("qf-census");
    r["lattice"] = name;
    r["form"] = to_json(f);
    r["isotropicUpToSign"] = isotropic_census(f);
    r["isotropicUpToIsometry"] = isotropic_orbits_full(f);
    auto a = alpha_invariants(f);
    r["orbitsUpToSign"] = a.orbits;
    r["alpha3"] = rat_str(a.alpha3);
    emit(g, r);
    return 0;
}

// ---------------------------------------------------------------- lat

int lat_roots(const Globals& g, const std::string& name) {
    auto l = resolve_lattice(name);
    if (!l.negative_definite()) throw UsageError(name + " is not definite");
    auto rts = roots(l);
    Json r = base("lat-roots");
    r["lattice"] = name;
    r["rank"] = l.rank();
    r["det"] = l.det().get_str();
    r["roots"] = rts.size();
    r["rootSystem"] = root_system(l, rts).str();
    auto rs = root_sublattice(l, rts);
    r["rootIndex"] = rs.index.get_str();
    r["theta"] = theta_counts(l, 2);
    emit(g, r);
    return 0;
}

int lat_complement(const Globals& g, const std::string& source, const std::string& target) {
    auto s = resolve_lattice(source), t = resolve_lattice(target);
    auto res = embed_root_chain(s, t, g.search());
    Json r = base("lat-complement");
    r["search"] = to_json(res);
    emit(g, r);
    if (res.inconclusive) {
        std::cerr << "inconclusive: " << res.reason << "\n";
        return 1;
    }
    return 0;
}

int lat_eichler(const Globals& g, int n) {
    if (n < 4) throw UsageError("--n must be at least 4");
    auto c = eichler_orbit_check(n);
    Json r = base("lat-eichler");
    r["check"] = to_json(c);
    emit(g, r);
    return c.equal ? 0 : 1;
}

int lat_normal_form(const Globals& g, const std::string& name, const std::string& file) {
    auto l = resolve_lattice(name);
    auto j = parse_vectors(read_file(file));
    if (j.size() != 2) throw UsageError("the vector file needs exactly two vectors");
    for (const auto& v : j)
        if (v.size() != l.rank()) throw UsageError("vector length differs from the rank of " + name);
    IsotropicNormalForm f;
    try {
        f = isotropic_normal_form(l, j);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Json r = base("lat-normal-form");
    r["lattice"] = name;
    r["normalForm"] = to_json(f);
    r["hJ"] = h_j(l, j);
    emit(g, r);
    return 0;
}

int catalog_export(const std::string& dir) {
    Json lat = Json::array(), forms = Json::array();
    for (const auto& e : builtin_lattice_catalog()) lat.push_back(to_json(e));
    for (const auto& e : builtin_form_catalog()) forms.push_back(to_json(e));
    for (const auto& [file, j] : {std::pair{"/niemeier.json", lat}, std::pair{"/forms.json", forms}}) {
        std::ofstream f(dir + file);
        if (!f) throw UsageError("cannot write " + dir + file);
        f << j.dump(1) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- census, verify

int run_census_cmd(const Globals& g, int n) {
    auto c = run_census(n, g.search(), g.jobs);
    Json r = census_report(c, !g.no_timing);
    emit(g, r);
    if (c.inconclusive) {
        std::cerr << "inconclusive: " << c.reason << "\n";
        return 1;
    }
    return c.counts_match() && c.labels_match() ? 0 : 1;
}

int verify_all(const Globals& g, const std::vector<int>& only) {
    AcceptanceOptions o;
    o.search = g.search();
    o.jobs = g.jobs;
    o.seed = g.seed;
    std::vector<int> ids = only;
    if (ids.empty())
        for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
    Json r = base("verify-all");
    r["criteria"] = Json::array();
    bool all = true;
    for (int id : ids) {
        if (id < 1 || id > kCriteria) throw UsageError("criteria are numbered 1 to 7");
        auto res = run_criterion(id, o);
        all = all && res.pass;
        std::cerr << result_line(res) << "\n";
        r["criteria"].push_back(to_json(res, !g.no_timing));
    }
    r["pass"] = all;
    emit(g, r);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trielliptic: exact checks for bidegree (2,3) surfaces and their lattices"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Config file with entries named like the flags (flags win)");
    Globals g;
    for (int i = 0; i < argc; ++i) g.argv.push_back(i == 0 ? "trielliptic" : argv[i]);
    app.add_option("--jobs", g.jobs, "Parallel searches")->check(CLI::PositiveNumber);
    app.add_option("--budget-seconds", g.budget, "Wall-clock budget per search; 0 is unlimited")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--max-leaves", g.max_leaves, "Leaf cap per coset enumeration");
    app.add_option("--max-nodes", g.max_nodes, "Backtracking node cap");
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--out", g.out, "Write the JSON report here instead of stdout");
    app.add_flag("--no-timing", g.no_timing, "Omit wall-clock fields so reports are byte-identical");

    std::function<int()> action;

    auto* git = app.add_subcommand("git", "GIT stability")->require_subcommand(1);
    std::string sign = "nonpositive", format = "json", poly_file;
    auto* fam = git->add_subcommand("families", "Maximal destabilized families");
    fam->add_option("--sign", sign)->check(CLI::IsMember({"nonpositive", "negative"}));
    fam->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
    fam->callback([&] { action = [&] { return git_families(g, sign, format); }; });
    auto* cls = git->add_subcommand("classify", "Torus-level verdict for a polynomial file");
    cls->add_option("--poly", poly_file)->required();
    cls->callback([&] { action = [&] { return git_classify(g, poly_file); }; });
    git->add_subcommand("strata-dims", "Stratum dimension table")->callback([&] {
        action = [&] { return git_strata(g); };
    });

    auto* geom = app.add_subcommand("geom", "Surface geometry")->require_subcommand(1);
    std::string label, point;
    int samples = 50;
    auto* vf = geom->add_subcommand("verify-family", "Check a family's characterization on random members");
    vf->add_option("--label", label)->required();
    vf->add_option("--samples", samples)->check(CLI::PositiveNumber);
    vf->add_option("--seed", g.seed);
    vf->callback([&] { action = [&] { return geom_verify(g, label, samples); }; });
    auto* an = geom->add_subcommand("analyze", "Singularity data and matching families");
    an->add_option("--poly", poly_file)->required();
    an->add_option("--point", point);
    an->callback([&] { action = [&] { return geom_analyze(g, poly_file, point); }; });

    auto* qf = app.add_subcommand("qf", "Finite quadratic forms")->require_subcommand(1);
    std::string lattice;
    long m = 1;
    auto* pic = qf->add_subcommand("picard", "Picard rank from the discriminant form");
    pic->add_option("--lattice", lattice)->required();
    pic->callback([&] { action = [&] { return qf_picard(g, lattice); }; });
    auto* ga = qf->add_subcommand("gauss", "Gauss sum");
    ga->add_option("--lattice", lattice)->required();
    ga->add_option("--m", m);
    ga->callback([&] { action = [&] { return qf_gauss(g, lattice, m); }; });
    auto* qc = qf->add_subcommand("census", "Isotropic elements");
    qc->add_option("--lattice", lattice)->required();
    qc->callback([&] { action = [&] { return qf_census(g, lattice); }; });

    auto* lat = app.add_subcommand("lat", "Lattices")->require_subcommand(1);
    std::string name, source, target, jfile, dir = ".";
    int n = 0;
    auto* lr = lat->add_subcommand("roots", "Roots of a definite lattice");
    lr->add_option("--name", name)->required();
    lr->callback([&] { action = [&] { return lat_roots(g, name); }; });
    auto* lc = lat->add_subcommand("complement", "Embeddings up to the Weyl group and their complements");
    lc->add_option("--source", source)->required();
    lc->add_option("--target", target)->required();
    lc->callback([&] { action = [&] { return lat_complement(g, source, target); }; });
    auto* le = lat->add_subcommand("eichler", "Norm -1 dual vectors of D_n versus one orbit");
    le->add_option("--n", n)->required();
    le->callback([&] { action = [&] { return lat_eichler(g, n); }; });
    auto* ln = lat->add_subcommand("normal-form", "Isotropic plane normal form");
    ln->add_option("--lattice", lattice)->required();
    ln->add_option("--j", jfile, "File with two integer vectors, one per line")->required();
    ln->callback([&] { action = [&] { return lat_normal_form(g, lattice, jfile); }; });
    auto* le2 = lat->add_subcommand("export-catalog", "Write niemeier.json and forms.json");
    le2->add_option("--dir", dir);
    le2->callback([&] { action = [&] { return catalog_export(dir); }; });

    auto* cen = app.add_subcommand("census", "Boundary census for one n");
    cen->add_option("--n", n)->required()->check(CLI::Range(1, 3));
    cen->add_option("--out", g.out);
    cen->callback([&] { action = [&] { return run_census_cmd(g, n); }; });

    auto* ver = app.add_subcommand("verify", "Acceptance suites")->require_subcommand(1);
    std::vector<int> only;
    auto* va = ver->add_subcommand("all", "Run every criterion");
    va->add_option("--only", only, "Subset of criteria")->delimiter(',');
    va->callback([&] { action = [&] { return verify_all(g, only); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return action ? action() : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
