// anharm: eigenenergies of quartic and sextic anharmonic oscillators from the
// zeros of the Wronskian of the origin-regular and recessive solutions.
//
// Subcommands: solve, scan, table1, table2, oracle, compare. Output is CSV or
// JSON with a suppressible metadata block; identical inputs produce
// byte-identical output (no timestamps).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anharm/oracle.hpp"
#include "anharm/reference_data.hpp"
#include "anharm/solver.hpp"
#include "anharm/wronskian.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// expression-lite parser for the QES parameters: numbers, + - * /, parentheses
// and sqrt of an integer or parenthesized expression, e.g. "(2+sqrt3)/4".

class ExprParser {
  public:
    explicit ExprParser(std::string text) : s_(std::move(text)) {}

    double parse() {
        double v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters");
        return v;
    }

  private:
    std::string s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw CLI::ValidationError("expression '" + s_ + "': " + why);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) {
                double d = factor();
                if (d == 0.0) fail("division by zero");
                v /= d;
            } else return v;
        }
    }
    double factor() {
        skip_ws();
        if (eat('-')) return -factor();
        if (eat('(')) {
            double v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (s_.compare(pos_, 4, "sqrt") == 0) {
            pos_ += 4;
            double v = eat('(') ? [&] {
                double w = expr();
                if (!eat(')')) fail("missing ')'");
                return w;
            }() : number();
            if (v < 0.0) fail("sqrt of a negative value");
            return std::sqrt(v);
        }
        return number();
    }
    double number() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit((unsigned char)s_[pos_]) || s_[pos_] == '.')) ++pos_;
        if (start == pos_) fail("number expected");
        return std::stod(s_.substr(start, pos_ - start));
    }
};

double parse_expr(const std::string& text) { return ExprParser(text).parse(); }

// ---------------------------------------------------------------------------
// output model

struct Cell {
    std::string text;       // CSV form
    bool numeric = false;
    std::string json_text;  // full-precision JSON form when it differs
};

// energies: 8 decimals in CSV (table style), full precision in JSON
Cell num8(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8f", v);
    Cell c{buf, true, ""};
    std::snprintf(buf, sizeof buf, "%.17g", v);
    c.json_text = buf;
    return c;
}
Cell numfull(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return {buf, true};
}
Cell numexp(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return {buf, true};
}
Cell integer(long v) { return {std::to_string(v), true}; }
Cell text(std::string t) { return {std::move(t), false}; }
Cell boolean(bool b) { return {b ? "true" : "false", false}; }

struct OutputTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

void write_csv(const OutputTable& t, bool no_meta, std::ostream& os) {
    if (!no_meta)
        for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << "\n";
    for (size_t i = 0; i < t.header.size(); ++i)
        os << t.header[i] << (i + 1 < t.header.size() ? "," : "");
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << row[i].text << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void write_json(const OutputTable& t, bool no_meta, std::ostream& os) {
    os << "{\n";
    if (!no_meta) {
        os << "  \"meta\": {";
        for (size_t i = 0; i < t.meta.size(); ++i)
            os << (i ? ", " : "") << "\"" << json_escape(t.meta[i].first) << "\": \""
               << json_escape(t.meta[i].second) << "\"";
        os << "},\n";
    }
    os << "  \"rows\": [\n";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        os << "    {";
        for (size_t i = 0; i < t.rows[r].size(); ++i) {
            const Cell& c = t.rows[r][i];
            os << (i ? ", " : "") << "\"" << json_escape(t.header[i]) << "\": ";
            if (c.numeric) os << (c.json_text.empty() ? c.text : c.json_text);
            else if (c.text == "true" || c.text == "false") os << c.text;
            else os << "\"" << json_escape(c.text) << "\"";
        }
        os << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

// ---------------------------------------------------------------------------
// job description shared by the subcommands

struct JobSpec {
    // family / potential
    bool quartic = false;
    bool sextic = false;
    double a4 = 1.0, a2 = 0.0, a6 = 1.0, am2 = 0.0;
    std::string qes_s, qes_j;
    // sector
    std::string sector = "auto";  // even | odd | both | regular | auto
    std::optional<double> nu_override;
    // solve / scan
    int count = 4;
    std::optional<double> e_min, e_max;
    double e_step = 0.01;
    double tolerance = 1e-10;
    std::vector<int> n_set{40, 41, 42};
    int h_order = 250;
    int b_order = 0;
    std::string route = "direct";
    bool serial = false;
    bool no_polish = false;
    // oracle
    double oracle_rmax = 0.0;
    int oracle_grid = 20000;
    double compare_tolerance = 1e-6;
    // output
    std::string format = "csv";
    std::string output;
    bool no_meta = false;
};

struct SectorJob {
    double nu;
    std::string label;
};

bool job_is_sextic(const JobSpec& job) {
    return job.sextic || !job.qes_s.empty() || !job.qes_j.empty();
}

anharm::SexticPotential make_sextic(const JobSpec& job) {
    if (!job.qes_s.empty() || !job.qes_j.empty()) {
        if (job.qes_s.empty() || job.qes_j.empty())
            throw CLI::ValidationError("--qes-s and --qes-j must be given together");
        return anharm::qes_potential(parse_expr(job.qes_s), parse_expr(job.qes_j));
    }
    return anharm::SexticPotential(job.a6, job.a4, job.a2, job.am2);
}

std::vector<SectorJob> resolve_sectors(const JobSpec& job, double am2) {
    auto pair = anharm::indicial_exponents(am2);
    std::string sector = job.sector;
    if (job.nu_override) return {{*job.nu_override, "nu=" + std::to_string(*job.nu_override)}};
    if (sector == "auto") sector = am2 == 0.0 && !job_is_sextic(job) ? "both" : "regular";
    if (sector == "regular") return {{pair.nu_regular, "regular"}};
    if (am2 != 0.0)
        throw CLI::ValidationError("even/odd sectors require am2 = 0; use --sector regular or --nu");
    if (sector == "even") return {{0.0, "even"}};
    if (sector == "odd") return {{1.0, "odd"}};
    if (sector == "both") return {{0.0, "even"}, {1.0, "odd"}};
    throw CLI::ValidationError("unknown sector '" + sector + "'");
}

template <class Pot>
double effective_minimum(const Pot& pot) {
    auto v = [&](double r) {
        if constexpr (std::is_same_v<Pot, anharm::QuarticPotential>) {
            double r2 = r * r;
            return (pot.a4 * r2 + pot.a2) * r2 + (pot.am2 != 0.0 ? pot.am2 / r2 : 0.0);
        } else {
            double r2 = r * r;
            return ((pot.a6 * r2 + pot.a4) * r2 + pot.a2) * r2 +
                   (pot.am2 != 0.0 ? pot.am2 / r2 : 0.0);
        }
    };
    double vmin = v(8.0);
    for (int i = 1; i <= 800; ++i) vmin = std::min(vmin, v(i * 0.01));
    return vmin;
}

anharm::EnergyScanConfig scan_config(const JobSpec& job, double e_min, double e_max) {
    anharm::EnergyScanConfig cfg;
    cfg.e_min = e_min;
    cfg.e_max = e_max;
    cfg.step = job.e_step;
    cfg.root_tolerance = job.tolerance;
    cfg.n_set = job.n_set;
    cfg.truncation.h_order = job.h_order;
    cfg.truncation.b_order = job.b_order;
    cfg.route = job.route == "closed" ? anharm::ScanRoute::closed_form : anharm::ScanRoute::direct;
    cfg.parallel = !job.serial;
    cfg.polish_extended = !job.no_polish;
    return cfg;
}

// lowest `count` states of one sector, growing the window until found
template <class Pot>
std::vector<anharm::EigenvalueResult> solve_sector(const Pot& pot, const SectorJob& sector,
                                                   const JobSpec& job) {
    double lo = job.e_min ? *job.e_min : effective_minimum(pot) - 1.0;
    double hi = job.e_max ? *job.e_max : lo + 15.0 + 10.0 * job.count;
    for (int attempt = 0;; ++attempt) {
        try {
            auto cfg = scan_config(job, lo, hi);
            auto ev = anharm::eigenvalues(pot, sector.nu, job.count, cfg);
            return ev;
        } catch (const std::runtime_error&) {
            if (job.e_max || attempt >= 4) throw;
            hi += 20.0 + 10.0 * job.count;  // grow the window and retry
        }
    }
}

void meta_common(OutputTable& t, const JobSpec& job, const std::string& command,
                 const char* family = nullptr) {
    t.meta.emplace_back("tool", std::string("anharm ") + kVersion);
    t.meta.emplace_back("command", command);
    t.meta.emplace_back("family", family ? family : (job_is_sextic(job) ? "sextic" : "quartic"));
}

int write_output(const OutputTable& t, const JobSpec& job) {
    std::ostringstream body;
    if (job.format == "json") write_json(t, job.no_meta, body);
    else write_csv(t, job.no_meta, body);
    if (job.output.empty()) {
        std::cout << body.str();
        return 0;
    }
    std::string path = job.output;
    const char* dir = std::getenv("ANHARM_OUTPUT_DIR");
    if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "anharm: cannot open output file " << path << "\n";
        return 1;
    }
    os << body.str();
    return 0;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_solve(const JobSpec& job) {
    OutputTable t;
    meta_common(t, job, "solve");
    t.header = {"k", "sector", "nu", "energy", "estimated_error", "qes_exact"};
    if (job.count == 0) return write_output(t, job);

    std::vector<std::vector<anharm::EigenvalueResult>> sectors;
    std::vector<std::string> labels;
    if (job_is_sextic(job)) {
        auto pot = make_sextic(job);
        for (const auto& sec : resolve_sectors(job, pot.am2)) {
            sectors.push_back(solve_sector(pot, sec, job));
            labels.push_back(sec.label);
        }
    } else {
        anharm::QuarticPotential pot(job.a4, job.a2, job.am2);
        for (const auto& sec : resolve_sectors(job, pot.am2)) {
            sectors.push_back(solve_sector(pot, sec, job));
            labels.push_back(sec.label);
        }
    }
    auto merged = anharm::merge_sectors(sectors);
    if ((int)merged.size() > job.count && sectors.size() > 1) merged.resize(job.count);
    for (const auto& r : merged) {
        std::string label = "nu";
        for (size_t i = 0; i < sectors.size(); ++i)
            if (r.sector_nu == sectors[i].front().sector_nu) label = labels[i];
        t.rows.push_back({integer(r.index_in_sector), text(label), numfull(r.sector_nu),
                          num8(r.energy), numexp(r.estimated_error), boolean(r.qes_exact)});
    }
    return write_output(t, job);
}

int cmd_scan(const JobSpec& job) {
    if (!job.e_min || !job.e_max)
        throw CLI::ValidationError("scan requires --emin and --emax");
    OutputTable t;
    meta_common(t, job, "scan");
    t.header = {"energy", "w_normalized", "spread", "converged"};

    anharm::WronskianEvaluator eval;
    double nu = 0.0;
    if (job_is_sextic(job)) {
        auto pot = make_sextic(job);
        nu = resolve_sectors(job, pot.am2).front().nu;
        if (job.route == "closed") {
            anharm::WronskianConfig wc;
            wc.truncation.h_order = job.h_order;
            wc.truncation.b_order = job.b_order;
            wc.n_set = job.n_set;
            eval = [=](double e) { return anharm::sextic_wronskian(pot, nu, e, wc.n_set.front(), wc); };
        } else {
            anharm::DirectConfig dc;
            dc.h_order = job.h_order;
            dc.b_order = job.b_order;
            eval = [=](double e) { return anharm::sextic_wronskian_direct(pot, nu, e, dc); };
        }
    } else {
        anharm::QuarticPotential pot(job.a4, job.a2, job.am2);
        nu = resolve_sectors(job, pot.am2).front().nu;
        if (job.route == "closed") {
            anharm::WronskianConfig wc;
            wc.truncation.h_order = job.h_order;
            wc.truncation.b_order = job.b_order;
            wc.n_set = job.n_set;
            eval = [=](double e) { return anharm::quartic_wronskian(pot, nu, e, wc.n_set.front(), wc); };
        } else {
            anharm::DirectConfig dc;
            dc.h_order = job.h_order;
            dc.b_order = job.b_order;
            eval = [=](double e) { return anharm::quartic_wronskian_direct(pot, nu, e, dc); };
        }
    }
    std::vector<double> grid;
    for (double e = *job.e_min; e <= *job.e_max + 0.5 * job.e_step; e += job.e_step)
        grid.push_back(e);
    auto values = anharm::scan_grid(eval, grid, !job.serial);
    for (size_t i = 0; i < grid.size(); ++i) {
        double norm = values[i].scale > 0.0 ? values[i].value / values[i].scale : 0.0;
        t.rows.push_back(
            {num8(grid[i]), numfull(norm), numexp(values[i].spread), boolean(values[i].converged)});
    }
    return write_output(t, job);
}

double key_of(const anharm::reference::QuarticRow& r);
double key_of(const anharm::reference::SexticRow& r);

template <class RowType, class PotFn>
int run_table(const JobSpec& job, const char* command, const char* key_name,
              const std::vector<RowType>& reference_rows, PotFn&& make_pot, bool sextic_table) {
    OutputTable t;
    meta_common(t, job, command, sextic_table ? "sextic" : "quartic");
    t.header = {key_name, "k", "sector", "energy", "estimated_error", "reference", "diff",
                "qes_exact"};
    int failures = 0;
    for (const auto& row : reference_rows) {
        try {
            if (!sextic_table) {
                auto pot = make_pot(row);
                JobSpec sj = job;
                sj.count = 2;
                sj.e_min = effective_minimum(pot) - 1.0;
                sj.e_max = row.energy[3] + 3.0;
                auto even = solve_sector(pot, {0.0, "even"}, sj);
                auto odd = solve_sector(pot, {1.0, "odd"}, sj);
                const anharm::EigenvalueResult* results[4] = {&even[0], &odd[0], &even[1], &odd[1]};
                const char* sector_of[4] = {"even", "odd", "even", "odd"};
                for (int k = 0; k < 4; ++k) {
                    double diff = results[k]->energy - row.energy[k];
                    t.rows.push_back({numfull(key_of(row)), integer(k), text(sector_of[k]),
                                      num8(results[k]->energy),
                                      numexp(results[k]->estimated_error), num8(row.energy[k]),
                                      numexp(diff), boolean(results[k]->qes_exact)});
                }
            } else {
                auto pot = make_pot(row);
                double nu = anharm::indicial_exponents(pot.am2).nu_regular;
                JobSpec sj = job;
                sj.count = 4;
                sj.e_min = effective_minimum(pot) - 1.0;
                sj.e_max = row.energy[3] + 3.0;
                auto ev = solve_sector(pot, {nu, "regular"}, sj);
                for (int k = 0; k < 4; ++k) {
                    double diff = ev[k].energy - row.energy[k];
                    t.rows.push_back({numfull(key_of(row)), integer(k), text("regular"),
                                      num8(ev[k].energy), numexp(ev[k].estimated_error),
                                      num8(row.energy[k]), numexp(diff),
                                      boolean(ev[k].qes_exact)});
                }
            }
        } catch (const std::exception& e) {
            ++failures;
            t.rows.push_back({numfull(key_of(row)), integer(-1), text("error"), text(e.what()),
                              text(""), text(""), text(""), text("")});
        }
    }
    int rc = write_output(t, job);
    return rc != 0 ? rc : (failures > 0 ? 1 : 0);
}

double key_of(const anharm::reference::QuarticRow& r) { return r.a2; }
double key_of(const anharm::reference::SexticRow& r) { return r.j; }

int cmd_table1(const JobSpec& job) {
    std::vector<anharm::reference::QuarticRow> rows(
        anharm::reference::double_well_table.begin(), anharm::reference::double_well_table.end());
    return run_table(job, "table1", "a2", rows,
                     [](const anharm::reference::QuarticRow& r) {
                         return anharm::QuarticPotential(1.0, r.a2);
                     },
                     false);
}

int cmd_table2(const JobSpec& job) {
    std::vector<anharm::reference::SexticRow> rows(anharm::reference::qes_table.begin(),
                                                   anharm::reference::qes_table.end());
    return run_table(job, "table2", "j", rows,
                     [](const anharm::reference::SexticRow& r) {
                         return anharm::qes_potential(anharm::reference::qes_s, r.j);
                     },
                     true);
}

anharm::Boundary boundary_of(const JobSpec& job, double am2) {
    if (job.sector == "even") return anharm::Boundary::even_1d;
    if (job.sector == "odd") return anharm::Boundary::odd_1d;
    if (job.sector == "regular" || job.sector == "auto") {
        if (am2 == 0.0 && !job_is_sextic(job) && job.sector == "auto")
            return anharm::Boundary::even_1d;
        return anharm::Boundary::dirichlet_origin;
    }
    throw CLI::ValidationError("oracle sector must be even, odd or regular");
}

int cmd_oracle(const JobSpec& job) {
    OutputTable t;
    meta_common(t, job, "oracle");
    t.header = {"k", "energy"};
    anharm::OracleConfig cfg;
    cfg.r_max = job.oracle_rmax;
    cfg.grid_points = job.oracle_grid;
    std::vector<double> ev;
    if (job_is_sextic(job)) {
        auto pot = make_sextic(job);
        ev = anharm::oracle_eigenvalues(pot, boundary_of(job, pot.am2), job.count, cfg);
    } else {
        anharm::QuarticPotential pot(job.a4, job.a2, job.am2);
        ev = anharm::oracle_eigenvalues(pot, boundary_of(job, pot.am2), job.count, cfg);
    }
    for (size_t k = 0; k < ev.size(); ++k) t.rows.push_back({integer((long)k), num8(ev[k])});
    return write_output(t, job);
}

int cmd_compare(const JobSpec& job) {
    OutputTable t;
    meta_common(t, job, "compare");
    t.header = {"k", "sector", "wronskian", "oracle", "abs_diff"};
    anharm::OracleConfig ocfg;
    ocfg.r_max = job.oracle_rmax;
    ocfg.grid_points = job.oracle_grid;

    bool over_tolerance = false;
    auto add_sector = [&](auto pot, const SectorJob& sec, anharm::Boundary boundary) {
        auto wr = solve_sector(pot, sec, job);
        auto orc = anharm::oracle_eigenvalues(pot, boundary, job.count, ocfg);
        for (int k = 0; k < job.count; ++k) {
            double diff = std::fabs(wr[k].energy - orc[k]);
            if (diff > job.compare_tolerance) over_tolerance = true;
            t.rows.push_back({integer(k), text(sec.label), num8(wr[k].energy), num8(orc[k]),
                              numexp(diff)});
        }
    };
    if (job_is_sextic(job)) {
        auto pot = make_sextic(job);
        for (const auto& sec : resolve_sectors(job, pot.am2))
            add_sector(pot, sec, sec.label == "even"  ? anharm::Boundary::even_1d
                                 : sec.label == "odd" ? anharm::Boundary::odd_1d
                                                      : anharm::Boundary::dirichlet_origin);
    } else {
        anharm::QuarticPotential pot(job.a4, job.a2, job.am2);
        for (const auto& sec : resolve_sectors(job, pot.am2))
            add_sector(pot, sec, sec.label == "even"  ? anharm::Boundary::even_1d
                                 : sec.label == "odd" ? anharm::Boundary::odd_1d
                                                      : anharm::Boundary::dirichlet_origin);
    }
    int rc = write_output(t, job);
    if (rc != 0) return rc;
    if (over_tolerance) {
        std::cerr << "anharm compare: deviation exceeds tolerance " << job.compare_tolerance
                  << "\n";
        return 1;
    }
    return 0;
}

void add_common_options(CLI::App* cmd, JobSpec& job, bool with_solver_opts) {
    cmd->add_flag("--quartic", job.quartic, "quartic family V = a4 r^4 + a2 r^2 + am2 r^-2");
    cmd->add_flag("--sextic", job.sextic, "sextic family V = a6 r^6 + a4 r^4 + a2 r^2 + am2 r^-2");
    cmd->add_option("--a6", job.a6, "r^6 coefficient (sextic)");
    cmd->add_option("--a4", job.a4, "r^4 coefficient");
    cmd->add_option("--a2", job.a2, "r^2 coefficient");
    cmd->add_option("--am2", job.am2, "centrifugal r^-2 coefficient");
    cmd->add_option("--qes-s", job.qes_s, "QES parameter s (expression, e.g. \"(2+sqrt3)/4\")");
    cmd->add_option("--qes-j", job.qes_j, "QES parameter J (expression)");
    cmd->add_option("--sector", job.sector, "even | odd | both | regular");
    cmd->add_option("--nu", [&job](const std::vector<std::string>& v) {
        job.nu_override = std::stod(v[0]);
        return true;
    }, "explicit indicial exponent for the sector");
    cmd->add_option("--format", job.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", job.output, "output file (ANHARM_OUTPUT_DIR applies)");
    cmd->add_flag("--no-meta", job.no_meta, "suppress the metadata header block");
    if (with_solver_opts) {
        cmd->add_option("--count,-n", job.count, "number of eigenvalues");
        cmd->add_option("--emin", [&job](const std::vector<std::string>& v) {
            job.e_min = std::stod(v[0]);
            return true;
        }, "scan lower bound");
        cmd->add_option("--emax", [&job](const std::vector<std::string>& v) {
            job.e_max = std::stod(v[0]);
            return true;
        }, "scan upper bound");
        cmd->add_option("--step", job.e_step, "scan grid step");
        cmd->add_option("--tol", job.tolerance, "root tolerance on E");
        cmd->add_option("--n-set", job.n_set, "closed-form reference indices");
        cmd->add_option("--h-order", job.h_order, "asymptotic series truncation order");
        cmd->add_option("--b-order", job.b_order, "power series truncation order (0 = auto)");
        cmd->add_option("--route", job.route, "scan route: direct | closed")
            ->check(CLI::IsMember({"direct", "closed"}));
        cmd->add_flag("--serial", job.serial, "disable the OpenMP grid scan");
        cmd->add_flag("--no-polish", job.no_polish, "skip the extended-precision root polish");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenenergies of anharmonic oscillators via Wronskian zeros"};
    app.set_config("--config", "",
                   "key=value configuration file; use a [subcommand] section and pass "
                   "--config before the subcommand");
    app.require_subcommand(1);

    JobSpec job;
    int (*runner)(const JobSpec&) = nullptr;

    auto* solve = app.add_subcommand("solve", "lowest eigenvalues of one potential");
    add_common_options(solve, job, true);
    solve->callback([&] { runner = cmd_solve; });

    auto* scan = app.add_subcommand("scan", "sample the normalized Wronskian on an energy grid");
    add_common_options(scan, job, true);
    scan->callback([&] { runner = cmd_scan; });

    auto* t1 = app.add_subcommand("table1", "regenerate the embedded double-well quartic table");
    add_common_options(t1, job, true);
    t1->callback([&] { runner = cmd_table1; });

    auto* t2 = app.add_subcommand("table2", "regenerate the embedded QES sextic table");
    add_common_options(t2, job, true);
    t2->callback([&] { runner = cmd_table2; });

    auto* orc = app.add_subcommand("oracle", "independent shooting-method eigenvalues");
    add_common_options(orc, job, true);
    orc->add_option("--rmax", job.oracle_rmax, "integration cutoff (0 = family default)");
    orc->add_option("--grid-points", job.oracle_grid, "Numerov grid points");
    orc->callback([&] { runner = cmd_oracle; });

    auto* cmp = app.add_subcommand("compare", "Wronskian method vs shooting oracle");
    add_common_options(cmp, job, true);
    cmp->add_option("--rmax", job.oracle_rmax, "oracle integration cutoff");
    cmp->add_option("--grid-points", job.oracle_grid, "oracle grid points");
    cmp->add_option("--tolerance", job.compare_tolerance, "maximum permitted |diff|");
    cmp->callback([&] { runner = cmd_compare; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        return runner(job);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "anharm: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "anharm: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "anharm: " << e.what() << "\n";
        return 1;
    }
}
