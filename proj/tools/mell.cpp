// Command-line surface for the mell library: basis export, cohomology
// reports, closed-form predictions, operator dumps and verification sweeps.
// Exit codes: 0 success, 1 verification mismatch, 2 usage error.

#include <CLI11.hpp>

#include <mell/mell.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kSchemaVersion = 1;

struct SpecOptions {
    int ell = 1;
    int sites = 1;
    bool periodic = false;
    bool free_bc = false;
    std::string special;

    mell::ChainSpec resolve() const {
        int picked = (periodic ? 1 : 0) + (free_bc ? 1 : 0) + (special.empty() ? 0 : 1);
        if (picked != 1)
            throw CLI::ValidationError(
                "boundary", "pick exactly one of --periodic, --free, --special c1,cN");
        if (periodic) return mell::ChainSpec::periodic(sites, ell);
        if (free_bc) return mell::ChainSpec::free_chain(sites, ell);
        int c1 = 0, cN = 0;
        char comma = 0;
        std::istringstream is(special);
        if (!(is >> c1 >> comma >> cN) || comma != ',' || !is.eof())
            throw CLI::ValidationError("--special", "expected c1,cN");
        return mell::ChainSpec::special(sites, ell, c1, cN);
    }
};

void add_spec_options(CLI::App* cmd, SpecOptions& spec) {
    cmd->add_option("--ell", spec.ell, "maximal cluster length")->required();
    cmd->add_option("--sites", spec.sites, "chain length N")->required();
    cmd->add_flag("--periodic", spec.periodic, "closed chain");
    cmd->add_flag("--free", spec.free_bc, "open chain, free ends");
    cmd->add_option("--special", spec.special, "open chain with end caps c1,cN");
}

mell::CouplingScheme resolve_scheme(int ell, const std::string& couplings) {
    if (couplings.empty()) return mell::CouplingScheme::all_ones(ell);
    std::vector<mell::Rational> primitive;
    std::stringstream ss(couplings);
    std::string item;
    while (std::getline(ss, item, ',')) primitive.push_back(mell::parse_rational(item));
    if (static_cast<int>(primitive.size()) != ell)
        throw CLI::ValidationError("--couplings", "need exactly ell amplitudes");
    return mell::CouplingScheme::build(primitive);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

struct IntRange {
    int lo = 0;
    int hi = 0;
};

IntRange parse_range(const std::string& text) {
    IntRange r;
    auto sep = text.find("..");
    if (sep == std::string::npos) {
        r.lo = r.hi = std::stoi(text);
    } else {
        r.lo = std::stoi(text.substr(0, sep));
        r.hi = std::stoi(text.substr(sep + 2));
    }
    if (r.lo > r.hi) throw CLI::ValidationError("range", "lower bound exceeds upper bound");
    return r;
}

int run_basis(const SpecOptions& spec_opt, bool json, const std::string& out_path) {
    const mell::ChainSpec spec = spec_opt.resolve();
    const mell::GradedBasis basis = mell::GradedBasis::enumerate(spec);
    if (json) {
        nlohmann::json j = basis.to_json();
        j["schema_version"] = kSchemaVersion;
        emit(j.dump(2) + "\n", out_path);
        return 0;
    }
    std::ostringstream os;
    os << "# mell basis schema_version=" << kSchemaVersion << "\n";
    os << spec.label() << " total_dim=" << basis.total_dim() << "\n";
    os << "f dim\n";
    for (int f = 0; f <= basis.f_max(); ++f) os << f << " " << basis.dim(f) << "\n";
    emit(os.str(), out_path);
    return 0;
}

int run_cohomology(const SpecOptions& spec_opt, const std::string& couplings, bool check_h,
                   bool oracle, bool json, bool csv, int jobs, const std::string& out_path) {
    const mell::ChainSpec spec = spec_opt.resolve();
    const mell::CouplingScheme scheme = resolve_scheme(spec.max_cluster, couplings);
    mell::ReportOptions opt;
    opt.check_hamiltonian = check_h;
    opt.with_oracle = oracle;
    opt.jobs = jobs > 0 ? jobs : 1;
    const mell::CohomologyReport rep = mell::full_report(spec, scheme, opt);
    if (json) {
        nlohmann::json j = rep.to_json();
        j["schema_version"] = kSchemaVersion;
        emit(j.dump(2) + "\n", out_path);
    } else if (csv) {
        emit("spec,f,dim,betti\n" + rep.to_csv(), out_path);
    } else {
        std::ostringstream os;
        os << "# mell cohomology schema_version=" << kSchemaVersion << "\n";
        os << spec.label() << "\n";
        os << "f dim betti\n";
        for (const auto& g : rep.grades)
            os << g.f << " " << g.dim << " " << g.betti << "\n";
        os << "witten=" << rep.witten_index << " euler=" << rep.euler_characteristic << "\n";
        if (oracle)
            os << "oracle " << (rep.oracle_ok() ? "OK" : "MISMATCH") << "\n";
        if (check_h)
            os << "hamiltonian-kernel " << (rep.hamiltonian_ok() ? "OK" : "MISMATCH") << "\n";
        emit(os.str(), out_path);
    }
    const bool checks_ok = (!oracle || rep.oracle_ok()) && (!check_h || rep.hamiltonian_ok());
    return checks_ok ? 0 : 1;
}

int run_predict(const SpecOptions& spec_opt, bool grid, bool json, const std::string& out_path) {
    if (grid) {
        const mell::RegionTable table = mell::region_table(spec_opt.ell, spec_opt.sites);
        if (json) {
            nlohmann::json j = table.to_json();
            j["schema_version"] = kSchemaVersion;
            emit(j.dump(2) + "\n", out_path);
        } else {
            emit(table.to_csv() + "\n" + table.to_diagram(), out_path);
        }
        return 0;
    }
    const mell::ChainSpec spec = spec_opt.resolve();
    const mell::Prediction pred = mell::predict(spec);
    if (json) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& [f, mult] : pred) cells.push_back({{"f", f}, {"multiplicity", mult}});
        nlohmann::json j{{"schema_version", kSchemaVersion},
                         {"spec", spec.to_json()},
                         {"ground_states", cells}};
        emit(j.dump(2) + "\n", out_path);
    } else {
        std::ostringstream os;
        os << "# mell predict schema_version=" << kSchemaVersion << "\n" << spec.label() << ":";
        if (pred.empty()) os << " no zero-energy states";
        for (const auto& [f, mult] : pred) os << " f=" << f << " x" << mult;
        os << "\n";
        emit(os.str(), out_path);
    }
    return 0;
}

int run_matrix(const SpecOptions& spec_opt, int grade, const std::string& op,
               const std::string& couplings, bool json, bool eigenvalues,
               const std::string& out_path) {
    const mell::ChainSpec spec = spec_opt.resolve();
    const mell::CouplingScheme scheme = resolve_scheme(spec.max_cluster, couplings);
    const mell::GradedBasis basis = mell::GradedBasis::enumerate(spec);
    mell::SparseRationalMatrix m;
    if (op == "q")
        m = mell::build_q(spec, basis, scheme, grade);
    else if (op == "qdag")
        m = mell::adjoint(mell::build_q(spec, basis, scheme, grade));
    else if (op == "h")
        m = mell::build_h(spec, basis, scheme, grade);
    else
        throw CLI::ValidationError("--op", "expected q, qdag or h");
    if (json) {
        nlohmann::json j = m.to_json();
        j["schema_version"] = kSchemaVersion;
        j["spec"] = spec.to_json();
        j["f"] = grade;
        j["op"] = op;
        if (eigenvalues && op == "h") j["eigenvalues"] = mell::numeric_spectrum(m);
        emit(j.dump(2) + "\n", out_path);
    } else {
        std::ostringstream os;
        os << "# mell matrix schema_version=" << kSchemaVersion << " op=" << op
           << " f=" << grade << " " << spec.label() << "\n";
        os << m.to_coord_text();
        if (eigenvalues && op == "h") {
            os << "# eigenvalues\n";
            for (double ev : mell::numeric_spectrum(m)) os << ev << "\n";
        }
        emit(os.str(), out_path);
    }
    return 0;
}

int run_split(const SpecOptions& spec_opt, const std::string& preset,
              const std::string& couplings, bool json, const std::string& out_path) {
    const mell::ChainSpec spec = spec_opt.resolve();
    const mell::CouplingScheme scheme = resolve_scheme(spec.max_cluster, couplings);
    const mell::BigradedComplex complex =
        mell::BigradedComplex::split(spec, mell::split_mask_for_preset(spec, preset), scheme);
    const auto analysis = complex.analyze();
    if (json) {
        nlohmann::json j = complex.to_json(analysis);
        j["schema_version"] = kSchemaVersion;
        j["preset"] = preset;
        emit(j.dump(2) + "\n", out_path);
        return 0;
    }
    std::ostringstream os;
    os << "# mell split schema_version=" << kSchemaVersion << " preset=" << preset << " "
       << spec.label() << "\n";
    os << "s1 =";
    for (int site : complex.s1_sites()) os << " " << site;
    os << "\nf1 f2 dim h_q1 h21\n";
    for (const auto& [bg, d] : analysis.cell_dims)
        os << bg.f1 << " " << bg.f2 << " " << d << " " << analysis.hq1_dims.at(bg) << " "
           << analysis.h21_dims.at(bg) << "\n";
    os << "one_row=" << (analysis.one_row ? "true" : "false");
    if (analysis.row_f1) os << " row_f1=" << *analysis.row_f1;
    os << "\nh21 totals:";
    for (const auto& [f, d] : analysis.h21_by_total_grade) os << " f=" << f << ":" << d;
    os << "\n";
    emit(os.str(), out_path);
    return 0;
}

struct VerifyOptions {
    std::string ells = "1..3";
    std::string sites = "1..10";
    bool periodic = false;
    bool free_bc = false;
    std::string special;
    bool all_boundaries = false;
    bool ladder = false;
    std::string ttt;
    int random_couplings = 0;
    std::uint64_t seed = 1;
    int jobs = 0;
    bool check_hamiltonian = false;
};

int run_verify(const VerifyOptions& v, bool json, const std::string& out_path) {
    const IntRange ells = parse_range(v.ells);
    const IntRange sites = parse_range(v.sites);
    std::vector<mell::ChainSpec> specs;
    for (int ell = ells.lo; ell <= ells.hi; ++ell)
        for (int n = sites.lo; n <= sites.hi; ++n) {
            if (v.all_boundaries) {
                auto family = mell::verify::boundary_family(ell, n, true, true);
                specs.insert(specs.end(), family.begin(), family.end());
                continue;
            }
            if (v.periodic) specs.push_back(mell::ChainSpec::periodic(n, ell));
            if (v.free_bc) specs.push_back(mell::ChainSpec::free_chain(n, ell));
            if (!v.special.empty()) {
                SpecOptions so;
                so.ell = ell;
                so.sites = n;
                so.special = v.special;
                specs.push_back(so.resolve());
            }
        }
    if (specs.empty())
        throw CLI::ValidationError("verify", "no boundary family selected");

    long failures = 0;
    std::ostringstream os;
    nlohmann::json jout{{"schema_version", kSchemaVersion}, {"seed", v.seed}};
    os << "# mell verify schema_version=" << kSchemaVersion << " seed=" << v.seed
       << " jobs=" << mell::resolve_jobs(v.jobs) << "\n";

    os << "# oracle comparison\n";
    nlohmann::json joracle = nlohmann::json::array();
    for (const auto& r : mell::verify::oracle_sweep(specs, v.jobs, v.check_hamiltonian)) {
        os << r.line << "\n";
        if (!r.ok) ++failures;
        nlohmann::json cell = r.report.to_json();
        cell["ok"] = r.ok;
        joracle.push_back(cell);
    }
    jout["oracle"] = joracle;

    if (v.ladder) {
        os << "# cut-and-paste ladder\n";
        std::vector<mell::ChainSpec> bigs;
        for (const auto& s : specs)
            if (s.n_sites > 2 * s.max_cluster + 2) bigs.push_back(s);
        nlohmann::json jladder = nlohmann::json::array();
        for (const auto& r : mell::verify::ladder_sweep(bigs, v.jobs)) {
            os << r.line << "\n";
            if (!r.ok) ++failures;
            nlohmann::json grades = nlohmann::json::array();
            for (const auto& g : r.grades)
                grades.push_back(
                    {{"f", g.f}, {"big", g.big}, {"small", g.small}, {"match", g.match}});
            jladder.push_back({{"spec", r.big.to_json()},
                               {"ok", r.ok},
                               {"low_grades_zero", r.low_grades_zero},
                               {"grades", grades}});
        }
        jout["ladder"] = jladder;
    }

    if (!v.ttt.empty()) {
        os << "# tic-tac-toe split (" << v.ttt << ")\n";
        std::vector<mell::ChainSpec> splittable;
        for (const auto& s : specs) {
            if (v.ttt == "prefix" && s.n_sites < s.max_cluster + 2) continue;
            if (v.ttt == "three-rule" && s.is_periodic() &&
                s.n_sites % (s.max_cluster + 2) != 0)
                continue;
            splittable.push_back(s);
        }
        nlohmann::json jttt = nlohmann::json::array();
        for (const auto& r : mell::verify::split_sweep(splittable, v.ttt, v.jobs)) {
            os << r.line << "\n";
            if (!r.ok()) ++failures;
            jttt.push_back({{"spec", r.spec.to_json()},
                            {"structure_ok", r.structure_ok},
                            {"one_row", r.one_row},
                            {"matches_betti", r.matches_betti}});
        }
        jout["tictactoe"] = jttt;
    }

    if (v.random_couplings > 0) {
        os << "# parameter independence (trials=" << v.random_couplings << ")\n";
        nlohmann::json jind = nlohmann::json::array();
        for (const auto& r :
             mell::verify::independence_sweep(specs, v.random_couplings, v.seed, v.jobs)) {
            os << r.line << "\n";
            if (!r.ok) ++failures;
            jind.push_back({{"spec", r.spec.to_json()}, {"ok", r.ok}});
        }
        jout["independence"] = jind;
    }

    os << "# summary: " << specs.size() << " specs, " << failures << " mismatches\n";
    jout["failures"] = failures;
    emit(json ? jout.dump(2) + "\n" : os.str(), out_path);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cohomology toolkit for cluster-constrained lattice fermions"};
    app.require_subcommand(1);

    SpecOptions spec_opt;
    std::string couplings, out_path, op = "q", ttt_preset;
    bool json = false, csv = false, check_h = false, oracle = true, grid = false;
    bool eigenvalues = false;
    int grade = 0;

    auto* basis_cmd = app.add_subcommand("basis", "enumerate the graded basis");
    add_spec_options(basis_cmd, spec_opt);
    basis_cmd->add_flag("--json", json, "machine-readable output");
    basis_cmd->add_option("--out", out_path, "write to file instead of stdout");

    int coh_jobs = 1;
    auto* coh_cmd = app.add_subcommand("cohomology", "per-grade cohomology dimensions");
    add_spec_options(coh_cmd, spec_opt);
    coh_cmd->add_option("--couplings", couplings, "comma-separated rational amplitudes");
    coh_cmd->add_flag("--check-hamiltonian", check_h, "cross-check against ker H");
    coh_cmd->add_flag("--oracle,!--no-oracle", oracle, "compare with the closed-form count");
    coh_cmd->add_flag("--json", json, "machine-readable output");
    coh_cmd->add_flag("--csv", csv, "one row per grade");
    coh_cmd->add_option("--jobs", coh_jobs, "worker threads for the grade pool");
    coh_cmd->add_option("--out", out_path, "write to file instead of stdout");

    auto* pred_cmd = app.add_subcommand("predict", "closed-form ground-state counts");
    add_spec_options(pred_cmd, spec_opt);
    pred_cmd->add_flag("--grid", grid, "emit the (c1,cN) region table");
    pred_cmd->add_flag("--json", json, "machine-readable output");
    pred_cmd->add_option("--out", out_path, "write to file instead of stdout");

    auto* mat_cmd = app.add_subcommand("matrix", "export an operator block");
    add_spec_options(mat_cmd, spec_opt);
    mat_cmd->add_option("--grade", grade, "fermion number of the source grade")->required();
    mat_cmd->add_option("--op", op, "q, qdag or h");
    mat_cmd->add_option("--couplings", couplings, "comma-separated rational amplitudes");
    mat_cmd->add_flag("--json", json, "machine-readable output");
    mat_cmd->add_flag("--eigenvalues", eigenvalues, "append the numeric spectrum (op=h)");
    mat_cmd->add_option("--out", out_path, "write to file instead of stdout");

    std::string split_preset = "prefix";
    auto* split_cmd = app.add_subcommand("split", "bigraded two-step cohomology table");
    add_spec_options(split_cmd, spec_opt);
    split_cmd->add_option("--preset", split_preset, "prefix or three-rule");
    split_cmd->add_option("--couplings", couplings, "comma-separated rational amplitudes");
    split_cmd->add_flag("--json", json, "machine-readable output");
    split_cmd->add_option("--out", out_path, "write to file instead of stdout");

    VerifyOptions vopt;
    auto* ver_cmd = app.add_subcommand("verify", "sweep chains against the closed forms");
    ver_cmd->add_option("--ell", vopt.ells, "cluster bound or range a..b");
    ver_cmd->add_option("--sites", vopt.sites, "chain length or range a..b");
    ver_cmd->add_flag("--periodic", vopt.periodic, "include closed chains");
    ver_cmd->add_flag("--free", vopt.free_bc, "include free open chains");
    ver_cmd->add_option("--special", vopt.special, "include one end-cap pair c1,cN");
    ver_cmd->add_flag("--all-boundaries", vopt.all_boundaries,
                      "closed chain plus the full end-cap grid");
    ver_cmd->add_flag("--ladder", vopt.ladder, "check the length-(ell+2) reduction");
    ver_cmd->add_option("--ttt", vopt.ttt, "split preset: prefix or three-rule");
    ver_cmd->add_option("--random-couplings", vopt.random_couplings,
                        "parameter-independence trials per spec");
    ver_cmd->add_option("--seed", vopt.seed, "seed for randomized checks");
    ver_cmd->add_option("--jobs", vopt.jobs, "worker threads (default: MELL_JOBS or cores)");
    ver_cmd->add_flag("--check-hamiltonian", vopt.check_hamiltonian,
                      "also cross-check exact kernels of H");
    ver_cmd->add_flag("--json", json, "machine-readable output");
    ver_cmd->add_option("--out", out_path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
        if (basis_cmd->parsed()) return run_basis(spec_opt, json, out_path);
        if (coh_cmd->parsed())
            return run_cohomology(spec_opt, couplings, check_h, oracle, json, csv, coh_jobs,
                                  out_path);
        if (pred_cmd->parsed()) return run_predict(spec_opt, grid, json, out_path);
        if (mat_cmd->parsed())
            return run_matrix(spec_opt, grade, op, couplings, json, eigenvalues, out_path);
        if (split_cmd->parsed())
            return run_split(spec_opt, split_preset, couplings, json, out_path);
        if (ver_cmd->parsed()) return run_verify(vopt, json, out_path);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
