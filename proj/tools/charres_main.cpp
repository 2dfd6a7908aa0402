#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chartab.hpp"
#include "criteria.hpp"
#include "degrees.hpp"
#include "exactnum.hpp"
#include "fusion.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using namespace charres;

namespace {

struct GlobalOpts {
    bool json = false;
    std::string expect;
    std::string data_dir;
    std::string echo;
    int rc = 0;  // sticky data-quality code set by handlers
};

std::string default_data_dir() {
    const char* env = std::getenv("CHARRES_DATA_DIR");
    if (env && *env) return env;
    if (fs::exists("data") && fs::is_directory("data")) return "data";
    return ".";
}

std::string resolve_path(const GlobalOpts& g, const std::string& arg) {
    if (fs::exists(arg)) return arg;
    if (arg.find('/') == std::string::npos) {
        std::string probe = g.data_dir + "/" + arg;
        if (fs::exists(probe)) return probe;
    }
    throw DataError("cannot find file: " + arg);
}

// command echo for the report header: arguments as typed, minus output-control
// and machine-specific flags
std::string build_echo(int argc, char** argv) {
    std::string out = "charres";
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--json") continue;
        if (a == "--expect" || a == "--data-dir") {
            ++i;
            continue;
        }
        if (a.rfind("--expect=", 0) == 0 || a.rfind("--data-dir=", 0) == 0) continue;
        out += " " + a;
    }
    return out;
}

int finish(Report& rep, const GlobalOpts& g) {
    std::string out = g.json ? rep.json() : rep.text();
    std::cout << out;
    if (!g.expect.empty()) {
        std::ifstream in(g.expect, std::ios::binary);
        if (!in) {
            std::cerr << "expect: cannot open " << g.expect << "\n";
            return 2;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        if (buf.str() != out) {
            std::cerr << "expect: MISMATCH vs " << g.expect << "\n";
            return 1;
        }
    }
    return g.rc;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

void render_verdict(Report& rep, const Verdict& v) {
    rep.kv("verdict", status_str(v.status) + "  rule=" + v.rule);
    for (const auto& [k, val] : v.evidence) rep.kv(k, val);
}

bool detect_fusion_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find('#');
        if (pos != std::string::npos) line = line.substr(0, pos);
        std::istringstream is(line);
        std::string kw;
        if (!(is >> kw)) continue;
        if (kw == "fusion") return true;
        if (kw == "group") return false;
        throw DataError("unrecognized data file (expected 'group' or 'fusion'): " + path);
    }
    throw DataError("empty data file: " + path);
}

std::vector<size_t> select_branches(const std::string& branch, size_t total) {
    if (branch == "all") {
        std::vector<size_t> all(total);
        for (size_t i = 0; i < total; ++i) all[i] = i;
        return all;
    }
    long idx = std::stol(branch);
    if (idx < 1 || static_cast<size_t>(idx) > total)
        throw DataError("branch index " + branch + " out of range 1.." + std::to_string(total));
    return {static_cast<size_t>(idx - 1)};
}

int cmd_validate(const GlobalOpts& g0, const std::string& file, const std::string& parent_file) {
    GlobalOpts g = g0;
    Report rep;
    rep.echo(g.echo);
    std::string path = resolve_path(g, file);
    rep.input(path);
    ValidationReport vr;
    if (detect_fusion_file(path)) {
        FusionDataset f = FusionDataset::load(path);
        rep.kv("dataset", f.subgroup_name + " -> " + f.parent_name);
        rep.kv("subgroup-order", f.subgroup_order.str());
        rep.kv("cover", std::to_string(f.cover));
        if (!parent_file.empty()) {
            std::string pp = resolve_path(g, parent_file);
            rep.input(pp);
            CharacterTable parent = CharacterTable::load(pp);
            vr = validate_fusion(f, &parent);
        } else {
            vr = validate_fusion(f);
        }
    } else {
        CharacterTable t = CharacterTable::load(path);
        rep.kv("group", t.group_name);
        rep.kv("order", t.order.str());
        rep.kv("classes", std::to_string(t.classes.size()));
        rep.kv("characters", std::to_string(t.characters.size()));
        vr = validate_table(t);
    }
    rep.section("checks");
    for (const auto& c : vr.checks)
        rep.kv(c.name, c.passed ? "pass" : "FAIL  " + c.detail);
    rep.kv("result", vr.all_passed() ? "all checks passed" : "checks FAILED");
    g.rc = vr.all_passed() ? 0 : 1;
    return finish(rep, g);
}

int cmd_norm(const GlobalOpts& g0, const std::string& file, const std::string& chi,
             const std::string& branch) {
    GlobalOpts g = g0;
    Report rep;
    rep.echo(g.echo);
    std::string path = resolve_path(g, file);
    rep.input(path);
    FusionDataset f = FusionDataset::load(path);
    rep.kv("dataset", f.subgroup_name + " -> " + f.parent_name);
    rep.kv("subgroup-order", f.subgroup_order.str());
    rep.kv("cover", std::to_string(f.cover));
    rep.kv("character", chi);
    auto branches = enumerate_branches(f);
    rep.kv("branches", std::to_string(branches.size()));
    for (size_t i : select_branches(branch, branches.size())) {
        rep.section("branch " + std::to_string(i + 1) + "/" + std::to_string(branches.size()) +
                    "  " + branch_label(f, branches[i]));
        NormResult r = restriction_norm(f, chi, branches[i]);
        rep.kv("sum", r.sum.str());
        rep.kv("norm", r.norm.str());
        try {
            Verdict v = frobenius_irreducible(r.norm);
            rep.kv("verdict", status_str(v.status) + "  rule=" + v.rule);
        } catch (const DataError& e) {
            rep.kv("verdict", std::string("data-error  ") + e.what());
            g.rc = 2;
        }
    }
    return finish(rep, g);
}

int cmd_clifford(const GlobalOpts& g0, const std::string& file, const std::string& chi,
                 const std::string& n_order_s, long max_order, const std::string& theta_s,
                 const std::string& branch) {
    GlobalOpts g = g0;
    Report rep;
    rep.echo(g.echo);
    std::string path = resolve_path(g, file);
    rep.input(path);
    FusionDataset f = FusionDataset::load(path);
    Integer n_order(n_order_s);
    std::optional<std::set<Integer>> theta;
    if (!theta_s.empty()) {
        theta.emplace();
        std::istringstream ts(theta_s);
        std::string piece;
        while (std::getline(ts, piece, ',')) theta->insert(Integer(piece));
    }
    rep.kv("dataset", f.subgroup_name + " -> " + f.parent_name);
    rep.kv("character", chi);
    rep.kv("normal-order", n_order.str());
    rep.kv("max-elt-order", std::to_string(max_order));
    auto branches = enumerate_branches(f);
    size_t id = f.identity_row();
    for (size_t bi : select_branches(branch, branches.size())) {
        const BranchAssignment& b = branches[bi];
        if (branches.size() > 1)
            rep.section("branch " + std::to_string(bi + 1) + "/" + std::to_string(branches.size()) +
                        "  " + branch_label(f, b));
        const Cyclotomic& degv = value_at(f, chi, id, b);
        Integer degree = numerator(degv.to_rational());
        auto subsets = enumerate_normal_subsets(f, chi, n_order, max_order, b);
        rep.kv("subsets", std::to_string(subsets.size()));
        for (size_t si = 0; si < subsets.size(); ++si) {
            const NormalSubset& s = subsets[si];
            rep.section("subset " + std::to_string(si + 1) + "/" + std::to_string(subsets.size()));
            std::string members;
            for (const auto& m : s.members) members += (members.empty() ? "" : " ") + m;
            for (const auto& [name, take] : s.agg_used)
                members += " " + name + "[" + take.str() + "]";
            rep.kv("classes", members);
            rep.kv("sum", s.sum.str());
            rep.kv("norm", s.norm.str());
            rep.kv("integral", yesno(s.integral));
            if (s.integral) {
                Integer m = numerator(s.norm);
                auto sols = clifford_solutions(m, degree, theta);
                if (sols.empty()) {
                    rep.kv("clifford", "no (e,t,theta) solves e^2*t=" + m.str() +
                                           ", e*t*theta=" + degree.str());
                } else {
                    for (const auto& sol : sols)
                        rep.kv("clifford", "e=" + sol.e.str() + " t=" + sol.t.str() +
                                               " theta=" + sol.theta_degree.str());
                    if (all_multiplicity_one(sols))
                        rep.kv("note",
                               "every solution has e=1: the restriction to the normal subgroup is a "
                               "sum of distinct conjugates, so the reduction mod l stays irreducible "
                               "whenever l does not divide the normal subgroup order");
                }
            }
        }
    }
    return finish(rep, g);
}

int cmd_screen(const GlobalOpts& g0, const std::string& family_s, long q, long q_lo, long q_hi,
               long ell_v) {
    GlobalOpts g = g0;
    Report rep;
    rep.echo(g.echo);
    auto fam = family_from_string(family_s);
    if (!fam) throw DataError("unknown family: " + family_s);
    std::vector<long> qs;
    if (q > 0) qs.push_back(q);
    for (long v = q_lo; q_lo > 0 && v <= q_hi; ++v) {
        try {
            check_admissible(*fam, v);
            qs.push_back(v);
        } catch (const DomainError&) {
        }
    }
    if (qs.empty()) throw DataError("no admissible q given (use --q or --q-range)");
    bool first = true;
    for (long qq : qs) {
        PrimePower pp = check_admissible(*fam, qq);
        EllClass ell = EllClass::make(ell_v, pp);
        ScreenResult res = screen(*fam, qq, ell, g.data_dir);
        if (first) {
            rep.input(g.data_dir + "/" + res.data_file);
            first = false;
        }
        rep.section("screen " + family_str(*fam) + " q=" + std::to_string(qq) +
                    " (p=" + std::to_string(pp.p) + " n=" + std::to_string(pp.n) +
                    ") l=" + ell.str());
        if (*fam == Family::G2) rep.kv("d1", d1(qq, ell).str());
        rep.kv("bound", res.bound_desc);
        for (const auto& e : res.entries)
            rep.kv(e.candidate.name, "order=" + e.candidate.order.str() + "  " +
                                         (e.kept ? "keep" : "cut"));
        std::string survivors;
        for (const auto& s : res.survivors)
            survivors += (survivors.empty() ? "" : " ") + s.name;
        rep.kv("survivors", survivors.empty() ? "(none)" : survivors);
    }
    return finish(rep, g);
}

int cmd_degrees(const GlobalOpts& g0, long q, long ell_v) {
    GlobalOpts g = g0;
    Report rep;
    rep.echo(g.echo);
    PrimePower pp = prime_power(q);
    EllClass ell = EllClass::make(ell_v, pp);
    rep.kv("q", std::to_string(q) + " (p=" + std::to_string(pp.p) + " n=" + std::to_string(pp.n) + ")");
    rep.kv("l", ell.str());
    rep.section("complex character degrees");
    for (const auto& [name, deg] : complex_degrees(q)) rep.kv(name, deg.str());
    if (ell.kind == EllClass::Kind::Two || ell.kind == EllClass::Kind::Three) {
        rep.section("l-modular degrees with open decomposition numbers");
        for (const auto& [name, dv] : brauer_degree_bounds(q, ell.ell)) rep.kv(name, dv.str());
    }
    rep.section("summary");
    rep.kv("d1", d1(q, ell).str());
    rep.kv("d2", d2(q, ell).str());
    GapCharacter gap = unique_gap_character(q, ell);
    rep.kv("psi", gap.str() + "  degree " + gap.degree.str());
    return finish(rep, g);
}

int cmd_blocktest(const GlobalOpts& g0, const std::string& deg_rho, const std::string& val_rho,
                  const std::string& deg_alpha, const std::string& val_alpha,
                  const std::string& class_length, long ell) {
    GlobalOpts g = g0;
    Report rep;
    rep.echo(g.echo);
    Integer dr(deg_rho), da(deg_alpha), L(class_length);
    Cyclotomic vr = Cyclotomic::parse(val_rho);
    Cyclotomic va = Cyclotomic::parse(val_alpha);
    rep.kv("rho", "degree " + dr.str() + ", value " + vr.str());
    rep.kv("alpha", "degree " + da.str() + ", value " + va.str());
    rep.kv("class-length", L.str());
    rep.kv("l", std::to_string(ell));
    render_verdict(rep, block_separation_witness(dr, vr, da, va, L, ell));
    return finish(rep, g);
}

int cmd_decompose(const GlobalOpts& g0, const std::string& fusion_file, const std::string& chi,
                  const std::string& table_file, const std::string& branch) {
    GlobalOpts g = g0;
    Report rep;
    rep.echo(g.echo);
    std::string fpath = resolve_path(g, fusion_file);
    std::string tpath = resolve_path(g, table_file);
    rep.input(fpath);
    rep.input(tpath);
    FusionDataset f = FusionDataset::load(fpath);
    CharacterTable t = CharacterTable::load(tpath);
    auto branches = enumerate_branches(f);
    for (size_t bi : select_branches(branch, branches.size())) {
        const BranchAssignment& b = branches[bi];
        if (branches.size() > 1)
            rep.section("branch " + std::to_string(bi + 1) + "/" + std::to_string(branches.size()) +
                        "  " + branch_label(f, b));
        std::map<std::string, Cyclotomic> values;
        for (size_t i = 0; i < f.rows.size(); ++i)
            values.emplace(f.rows[i].name, value_at(f, chi, i, b));
        rep.section("multiplicities of " + chi + " against " + t.group_name);
        try {
            for (const auto& [name, mult] : decompose(values, t)) rep.kv(name, mult.str());
            rep.kv("result", "class function is a genuine character");
        } catch (const DataError& e) {
            rep.kv("result", std::string("FAIL  ") + e.what());
            g.rc = 2;
        }
    }
    return finish(rep, g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for character restrictions"};
    app.require_subcommand(1);

    GlobalOpts g;
    g.data_dir = default_data_dir();
    g.echo = build_echo(argc, argv);
    app.add_flag("--json", g.json, "emit the report as JSON (schema charres-report/1)");
    app.add_option("--expect", g.expect, "golden file; exit 1 unless the text report matches");
    app.add_option("--data-dir", g.data_dir, "directory searched for bare data file names");

    // validate
    auto* validate = app.add_subcommand("validate", "structural checks for a table or fusion file");
    validate->fallthrough();
    std::string v_file, v_parent;
    validate->add_option("file", v_file)->required();
    validate->add_option("--parent", v_parent, "parent table for fusion cross checks");

    // norm
    auto* norm = app.add_subcommand("norm", "restriction norm of a character along a fusion");
    norm->fallthrough();
    std::string n_file, n_chi, n_branch = "all";
    norm->add_option("fusion", n_file)->required();
    norm->add_option("character", n_chi)->required();
    norm->add_option("--branch", n_branch, "all or a 1-based branch index");

    // clifford
    auto* clifford = app.add_subcommand("clifford", "normal-subset norms and (e,t,theta) solutions");
    clifford->fallthrough();
    std::string c_file, c_chi, c_n, c_theta, c_branch = "all";
    long c_max = 0;
    clifford->add_option("fusion", c_file)->required();
    clifford->add_option("character", c_chi)->required();
    clifford->add_option("--normal-order", c_n)->required();
    clifford->add_option("--max-elt-order", c_max)->required();
    clifford->add_option("--theta", c_theta, "comma separated allowed constituent degrees");
    clifford->add_option("--branch", c_branch, "all or a 1-based branch index");

    // screen
    auto* screen_cmd = app.add_subcommand("screen", "order screen over maximal subgroup candidates");
    screen_cmd->fallthrough();
    std::string s_family, s_range;
    long s_q = 0, s_ell = 0;
    screen_cmd->add_option("--family", s_family)->required();
    screen_cmd->add_option("--q", s_q);
    screen_cmd->add_option("--q-range", s_range, "inclusive range A:B of q values");
    screen_cmd->add_option("--ell", s_ell);

    // degrees
    auto* degrees_cmd = app.add_subcommand("degrees", "degree catalog, d1, d2 and the gap character");
    degrees_cmd->fallthrough();
    long d_q = 0, d_ell = 0;
    degrees_cmd->add_option("--q", d_q)->required();
    degrees_cmd->add_option("--ell", d_ell);

    // blocktest
    auto* blocktest = app.add_subcommand("blocktest", "central character block separation witness");
    blocktest->fallthrough();
    std::string b_dr, b_vr, b_da, b_va, b_len;
    long b_ell = 0;
    blocktest->add_option("--deg-rho", b_dr)->required();
    blocktest->add_option("--val-rho", b_vr)->required();
    blocktest->add_option("--deg-alpha", b_da)->required();
    blocktest->add_option("--val-alpha", b_va)->required();
    blocktest->add_option("--class-length", b_len)->required();
    blocktest->add_option("--ell", b_ell)->required();

    // decompose
    auto* decompose_cmd = app.add_subcommand("decompose", "multiplicities against a complete table");
    decompose_cmd->fallthrough();
    std::string dc_file, dc_chi, dc_table, dc_branch = "1";
    decompose_cmd->add_option("fusion", dc_file)->required();
    decompose_cmd->add_option("character", dc_chi)->required();
    decompose_cmd->add_option("table", dc_table)->required();
    decompose_cmd->add_option("--branch", dc_branch, "all or a 1-based branch index");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(g, v_file, v_parent);
        if (norm->parsed()) return cmd_norm(g, n_file, n_chi, n_branch);
        if (clifford->parsed()) return cmd_clifford(g, c_file, c_chi, c_n, c_max, c_theta, c_branch);
        if (screen_cmd->parsed()) {
            long lo = 0, hi = 0;
            if (!s_range.empty()) {
                auto pos = s_range.find(':');
                if (pos == std::string::npos) throw DataError("--q-range expects A:B");
                lo = std::stol(s_range.substr(0, pos));
                hi = std::stol(s_range.substr(pos + 1));
            }
            return cmd_screen(g, s_family, s_q, lo, hi, s_ell);
        }
        if (degrees_cmd->parsed()) return cmd_degrees(g, d_q, d_ell);
        if (blocktest->parsed()) return cmd_blocktest(g, b_dr, b_vr, b_da, b_va, b_len, b_ell);
        if (decompose_cmd->parsed()) return cmd_decompose(g, dc_file, dc_chi, dc_table, dc_branch);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
