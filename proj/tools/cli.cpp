#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qtspp/cofactor.hpp"
#include "qtspp/errors.hpp"
#include "qtspp/guess.hpp"
#include "qtspp/parallel.hpp"
#include "qtspp/recurrence_io.hpp"
#include "qtspp/verify.hpp"

namespace qtspp::cli {

namespace fs = std::filesystem;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failed check that should stop a pipeline.
struct StageFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint32_t prime = PrimeModulus::kDefault;
  std::int64_t q = 2;
  std::size_t n_max = 35;
  bool n_max_set = false;
  int alpha_max = 4;
  int beta_max = 7;
  int gamma_max = 10;
  std::int64_t q_from = 2;
  std::int64_t q_to = 150;
  std::size_t n_ext = 120;
  std::size_t L = 0;  // 0: per-check default
  bool q1 = false;
  std::size_t workers = 1;
  std::size_t points = 20;
  std::string out;
  std::string in;
  bool rescale_poles = false;
  bool binary = false;

  AnsatzBounds bounds() const { return {alpha_max, beta_max, gamma_max, 0}; }
  std::int64_t q_point() const { return q1 ? 1 : q; }
};

using Clock = std::chrono::steady_clock;

std::string seconds_since(Clock::time_point t0) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << std::chrono::duration<double>(Clock::now() - t0).count() << "s";
  return os.str();
}

class Session {
 public:
  Session(const Config& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), mod_(cfg.prime), out_(out), err_(err) {}

  // ---- files ----------------------------------------------------------------

  fs::path out_dir() const {
    fs::path dir = cfg_.out;
    if (dir.empty()) {
      const char* env = std::getenv(kOutputEnv);
      dir = env && *env ? env : "qtspp-out";
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
  }

  fs::path write(const std::string& name, const std::function<void(std::ostream&)>& body,
                 bool binary = false) const {
    const fs::path path = out_dir() / name;
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    body(os);
    os.flush();
    if (!os) throw IoError("write to " + path.string() + " failed");
    return path;
  }

  static std::ifstream open(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    return is;
  }

  CofactorTable load_table(const fs::path& path) const {
    auto is = open(path);
    return read_table(is);
  }

  AnyRecurrence load_recurrence(const fs::path& path) const {
    auto is = open(path);
    return read_recurrence(is);
  }

  fs::path save_table(const CofactorTable& t) const {
    const std::string name = "cofactors_q" + std::to_string(t.qpt().q_int()) + "_n" +
                             std::to_string(t.n_max()) + (cfg_.binary ? ".bin" : ".txt");
    return write(
        name,
        [&](std::ostream& os) { cfg_.binary ? write_table_binary(os, t) : write_table_text(os, t); },
        cfg_.binary);
  }

  fs::path save_report(const VerificationReport& r) const {
    return write("report_" + r.identity + ".json",
                 [&](std::ostream& os) { os << to_json(r).dump(1) << '\n'; });
  }

  // ---- building blocks ------------------------------------------------------------

  void require_admissible(std::int64_t q, std::size_t n_max) const {
    if (!is_admissible(q, mod_, n_max)) {
      throw InvalidArgument("q = " + std::to_string(q) + " is refused mod " + std::to_string(mod_.p()) +
                            ": zero or a root of unity of order below " + std::to_string(kMinimumOrder));
    }
  }

  CofactorTable table_at(std::int64_t q, std::size_t n_max, PoleMode mode) const {
    require_admissible(q, n_max);
    return build_table(n_max, make_qpoint(q, mod_, n_max), cfg_.workers, mode);
  }

  // Table for guessing: --in, else built at --q with rescaled pole rows.
  CofactorTable guess_table() const {
    if (!cfg_.in.empty()) return load_table(cfg_.in);
    return table_at(cfg_.q_point(), cfg_.n_max, PoleMode::rescale);
  }

  // Deterministic pseudo-random admissible q-points for identity checks.
  std::vector<std::int64_t> check_points() const {
    std::mt19937_64 rng(0x71737070);
    std::vector<std::int64_t> qs;
    while (qs.size() < cfg_.points) {
      const auto q = static_cast<std::int64_t>(2 + rng() % 1000000);
      if (std::find(qs.begin(), qs.end(), q) == qs.end() && is_admissible(q, mod_, cfg_.n_max)) qs.push_back(q);
    }
    std::sort(qs.begin(), qs.end());
    return qs;
  }

  std::vector<CofactorTable> identity_tables(std::size_t L) const {
    if (!cfg_.in.empty()) return {load_table(cfg_.in)};
    if (cfg_.q1) return {table_at(1, L, PoleMode::reject)};
    const auto qs = check_points();
    std::vector<std::optional<CofactorTable>> slots(qs.size());
    parallel_for(qs.size(), cfg_.workers, [&](std::size_t k) {
      slots[k].emplace(build_table(L, make_qpoint(qs[k], mod_, L), 1, PoleMode::reject));
    });
    std::vector<CofactorTable> tables;
    for (auto& s : slots) tables.push_back(std::move(*s));
    return tables;
  }

  std::size_t identity_L(const std::vector<CofactorTable>* tables = nullptr) const {
    if (cfg_.L) return cfg_.L;
    if (tables && !cfg_.in.empty()) return tables->front().n_max();
    return cfg_.q1 ? 60 : 40;
  }

  ModularRecurrence guess(const CofactorTable& table) const {
    return guess_modular(table, AnsatzSupport::full(cfg_.bounds()));
  }

  SymbolicRecurrence reconstruct(const AnsatzSupport& support) const {
    SweepOptions opts;
    opts.n_max = cfg_.n_max;
    opts.workers = cfg_.workers;
    const auto t0 = Clock::now();
    auto result = sweep(support, cfg_.q_from, cfg_.q_to, mod_, opts);
    for (const auto& s : result.skipped) err_ << "skip q=" << s.q_int << ": " << s.reason << '\n';
    out_ << "sweep " << cfg_.q_from << ".." << cfg_.q_to << ": " << result.recurrences.size() << " q-points used, "
         << result.skipped.size() << " skipped (" << seconds_since(t0) << ")\n";
    return reconstruct_symbolic(result.recurrences, cfg_.workers);
  }

  VerificationReport report(const VerificationReport& r) const {
    out_ << summary(r);
    out_ << "  report: " << save_report(r).string() << '\n';
    return r;
  }

  static VerificationReport merge(const std::string& name, const std::vector<VerificationReport>& parts) {
    VerificationReport r;
    r.identity = name;
    for (const auto& p : parts) {
      r.L = std::max(r.L, p.L);
      r.q_points.insert(r.q_points.end(), p.q_points.begin(), p.q_points.end());
      r.checks += p.checks;
      r.failures.insert(r.failures.end(), p.failures.begin(), p.failures.end());
      r.seconds += p.seconds;
    }
    return r;
  }

  SymbolicRecurrence symbolic_input() const {
    fs::path path = cfg_.in;
    if (path.empty()) path = out_dir() / "recurrence_symbolic.json";
    auto rec = load_recurrence(path);
    if (!std::holds_alternative<SymbolicRecurrence>(rec)) {
      throw FormatError(path.string() + " holds a modular recurrence; a symbolic one is needed");
    }
    return std::get<SymbolicRecurrence>(std::move(rec));
  }

  // ---- subcommands --------------------------------------------------------------

  int cofactors() const {
    const auto t0 = Clock::now();
    const auto q = cfg_.q_point();
    const auto table = table_at(q, cfg_.n_max, cfg_.rescale_poles ? PoleMode::rescale : PoleMode::reject);
    const auto path = save_table(table);
    out_ << "q=" << q << " p=" << mod_.p() << ": " << table.n_max() << " rows, " << table.value_count()
         << " values (" << seconds_since(t0) << ")\n";
    if (!table.rescaled_rows().empty()) {
      out_ << "rescaled rows (pole at this q):";
      for (auto n : table.rescaled_rows()) out_ << ' ' << n;
      out_ << '\n';
    }
    out_ << "  table: " << path.string() << '\n';
    return kOk;
  }

  ModularRecurrence run_guess() const {
    const auto t0 = Clock::now();
    const auto table = guess_table();
    const auto rec = guess(table);
    const auto path = write("guess_q" + std::to_string(rec.q_int) + ".json",
                            [&](std::ostream& os) { write_recurrence(os, rec); });
    const auto rows = equation_windows(table.n_max(), rec.support, EquationSet::full_triangle).size();
    out_ << "q=" << rec.q_int << " p=" << mod_.p() << ": " << rows << " equations, " << rec.support.size()
         << " unknowns, nullspace dimension " << rec.nullspace_dim << ", " << rec.zero_count() << " of "
         << rec.support.size() << " coefficients zero (" << seconds_since(t0) << ")\n";
    if (!table.rescaled_rows().empty()) out_ << "  " << table.rescaled_rows().size() << " table rows rescaled\n";
    out_ << "  recurrence: " << path.string() << '\n';
    return rec;
  }

  int guess_cmd() const {
    run_guess();
    return kOk;
  }

  SymbolicRecurrence run_reconstruct() const {
    AnsatzSupport support;
    if (!cfg_.in.empty()) {
      auto rec = load_recurrence(cfg_.in);
      if (!std::holds_alternative<ModularRecurrence>(rec)) throw FormatError("--in must be a modular recurrence");
      support = refine_support(std::get<ModularRecurrence>(rec));
    } else {
      support = refine_support(guess(table_at(cfg_.q, cfg_.n_max, PoleMode::rescale)));
    }
    out_ << "refined support: " << support.size() << " terms\n";
    const auto t0 = Clock::now();
    auto sym = reconstruct(support);
    const auto path = write("recurrence_symbolic.json", [&](std::ostream& os) { write_recurrence(os, sym); });
    out_ << "max |integer coefficient| = " << sym.max_abs_coefficient() << " (" << seconds_since(t0) << ")\n";
    if (looks_like_artefact(sym)) out_ << "  warning: coefficients this large suggest an artefact solution\n";
    out_ << "  recurrence: " << path.string() << '\n';
    return sym;
  }

  int reconstruct_cmd() const {
    run_reconstruct();
    return kOk;
  }

  VerificationReport verify(const std::string& which) const {
    if (which == "soichi" || which == "okada" || which == "normalization") {
      const std::size_t L0 = identity_L();
      auto tables = identity_tables(L0);
      const std::size_t L = identity_L(&tables);
      if (which == "soichi") return report(check_soichi(tables, L, cfg_.workers));
      if (which == "okada") return report(check_okada(tables, L, cfg_.workers));
      std::vector<VerificationReport> parts;
      for (const auto& t : tables) parts.push_back(check_normalization(t));
      return report(merge("normalization", parts));
    }
    if (which == "extended") {
      return report(check_extended(symbolic_input(), cfg_.q, mod_, cfg_.n_ext, cfg_.workers));
    }
    if (which == "ct") {
      const std::size_t n = cfg_.L ? cfg_.L : 30;
      if (!cfg_.in.empty()) return report(ct_check_q1(load_table(cfg_.in), n));
      return report(ct_check_q1(n));
    }
    if (which == "brute") return report(brute(cfg_.n_max_set ? cfg_.n_max : 4));
    if (which == "factors") return report(check_leading_factors(symbolic_input()));
    throw InvalidArgument("unknown check " + which);
  }

  // brute_force_qtspp(n) against the product formula at 30 points and at q = 1.
  VerificationReport brute(std::size_t n_top) const {
    const auto t0 = Clock::now();
    VerificationReport r;
    r.identity = "brute";
    r.L = n_top;
    for (std::int64_t q = 1; q <= 31; ++q) r.q_points.push_back(q);
    for (std::size_t n = 1; n <= n_top; ++n) {
      const auto poly = brute_force_qtspp(static_cast<int>(n));
      ++r.checks;
      if (poly.evaluate(BigInt(1)) != tspp_count(n)) {
        r.failures.push_back({1, n, 0, poly.evaluate(BigInt(1)).str() + " ideals, product gives " + tspp_count(n).str()});
      }
      for (std::int64_t q = 2; q <= 31; ++q) {
        ++r.checks;
        const QPoint qpt(q, mod_, n);
        const auto lhs = poly.evaluate(qpt.reduced(), mod_);
        const auto rhs = qtspp_orbit_product(n, qpt);
        if (lhs != rhs) {
          r.failures.push_back({q, n, 0, std::to_string(lhs.value) + " != " + std::to_string(rhs.value)});
        }
      }
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
  }

  int verify_cmd(const std::string& which) const { return verify(which).pass() ? kOk : kCheckFailed; }

  // ---- pipeline ---------------------------------------------------------------

  void stage(const std::string& name, const VerificationReport& r) const {
    if (!r.pass()) throw StageFailed(name);
  }

  int pipeline() const {
    if (cfg_.q1) return pipeline_q1();
    out_ << "== cofactors\n";
    const auto table = table_at(cfg_.q, cfg_.n_max, PoleMode::rescale);
    save_table(table);
    out_ << "q=" << cfg_.q << ": " << table.value_count() << " values, " << table.rescaled_rows().size()
         << " rescaled rows\n";
    out_ << "== guess\n";
    const auto rec = guess(table);
    write("guess_q" + std::to_string(rec.q_int) + ".json", [&](std::ostream& os) { write_recurrence(os, rec); });
    const auto rows = equation_windows(table.n_max(), rec.support, EquationSet::full_triangle).size();
    out_ << rows << " equations, " << rec.support.size() << " unknowns, nullspace dimension " << rec.nullspace_dim
         << ", " << rec.zero_count() << " zero coefficients\n";
    if (rec.nullspace_dim != 1) throw StageFailed("guess");
    out_ << "== reconstruct\n";
    const auto support = refine_support(rec);
    out_ << "refined support: " << support.size() << " terms\n";
    const auto sym = reconstruct(support);
    write("recurrence_symbolic.json", [&](std::ostream& os) { write_recurrence(os, sym); });
    out_ << "max |integer coefficient| = " << sym.max_abs_coefficient() << '\n';
    out_ << "== verify\n";
    const std::size_t L = identity_L();
    const auto tables = identity_tables(L);
    auto soichi = report(check_soichi(tables, L, cfg_.workers));
    stage("verify soichi", soichi);
    auto okada = report(check_okada(tables, L, cfg_.workers));
    stage("verify okada", okada);
    std::vector<VerificationReport> parts;
    for (const auto& t : tables) parts.push_back(check_normalization(t));
    auto norm = report(merge("normalization", parts));
    stage("verify normalization", norm);
    auto factors = report(check_leading_factors(sym));
    auto ext = report(check_extended(sym, cfg_.q, mod_, cfg_.n_ext, cfg_.workers));
    const std::int64_t outside = cfg_.q_to + 1;
    auto ext_out = check_extended(sym, outside, mod_, std::min<std::size_t>(cfg_.n_ext, 60), cfg_.workers);
    ext_out.identity = "extended-outside";
    report(ext_out);

    const bool small = sym.max_abs_coefficient() <= 43;
    out_ << "== plausibility\n";
    auto item = [&](int k, bool ok, const std::string& text) {
      out_ << "  " << k << ". " << (ok ? "PASS " : "FAIL ") << text << '\n';
    };
    item(1, rec.nullspace_dim == 1 && rows > rec.support.size(),
         "dense overdetermined system (" + std::to_string(rows) + " x " + std::to_string(rec.support.size()) +
             ") with a one-dimensional solution space");
    item(2, small, "integer coefficients bounded by 43 (max " + sym.max_abs_coefficient().str() + ")");
    item(3, factors.pass(), "leading coefficient vanishes on its six expected factors");
    item(4, ext.pass(), "annihilates B' for n <= " + std::to_string(cfg_.n_ext) + " at q = " + std::to_string(cfg_.q));
    item(5, ext_out.pass(), "annihilates B' at q = " + std::to_string(outside) + ", outside the sweep");
    stage("plausibility", factors);
    stage("plausibility", ext);
    stage("plausibility", ext_out);
    if (!small) throw StageFailed("plausibility");
    return kOk;
  }

  int pipeline_q1() const {
    const std::size_t L = cfg_.L ? cfg_.L : 60;
    out_ << "== cofactors (q = 1)\n";
    const auto table = table_at(1, L, PoleMode::reject);
    save_table(table);
    const std::vector<CofactorTable> tables{table};
    out_ << "== verify\n";
    stage("verify soichi", report(check_soichi(tables, L, cfg_.workers)));
    stage("verify okada", report(check_okada(tables, L, cfg_.workers)));
    stage("verify normalization", report(check_normalization(table)));
    stage("verify ct", report(ct_check_q1(table, std::min<std::size_t>(L, 30))));
    stage("verify brute", report(brute(4)));
    return kOk;
  }

 private:
  const Config& cfg_;
  PrimeModulus mod_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_common(CLI::App& app, Config& cfg) {
  app.add_option("--q", cfg.q, "numeric value substituted for q")->check(CLI::PositiveNumber);
  app.add_option("--prime", cfg.prime, "prime modulus");
  app.add_option("--n-max", cfg.n_max, "table size for guessing and sweeps")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { cfg.n_max_set = true; });
  app.add_option("--alpha-max", cfg.alpha_max, "ansatz bound on alpha")->check(CLI::NonNegativeNumber);
  app.add_option("--beta-max", cfg.beta_max, "ansatz bound on beta")->check(CLI::NonNegativeNumber);
  app.add_option("--gamma-max", cfg.gamma_max, "ansatz bound on gamma")->check(CLI::NonNegativeNumber);
  app.add_option("--q-from", cfg.q_from, "first q of the sweep");
  app.add_option("--q-to", cfg.q_to, "last q of the sweep");
  app.add_option("--n-ext", cfg.n_ext, "table size for extended annihilation")->check(CLI::PositiveNumber);
  app.add_option("--L", cfg.L, "bound for identity checks")->check(CLI::PositiveNumber);
  app.add_flag("--q1", cfg.q1, "work at q = 1 (the TSPP case)");
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--points", cfg.points, "number of q-points for identity checks")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, std::string("output directory (default $") + kOutputEnv + " or ./qtspp-out)");
  app.add_option("--in", cfg.in, "input table or recurrence file");
  app.add_flag("--rescale-poles", cfg.rescale_poles, "store rows with a pole at q rescaled instead of failing");
  app.add_flag("--binary", cfg.binary, "write tables in the binary layout");
}

void validate(const Config& cfg, bool guessing) {
  if (guessing && cfg.n_max <= static_cast<std::size_t>(cfg.gamma_max)) {
    throw InvalidArgument("--n-max must exceed --gamma-max");
  }
  if (cfg.q_to < cfg.q_from) throw InvalidArgument("sweep range is empty");
  if (cfg.q_from < 2) throw InvalidArgument("--q-from must be at least 2");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app("Workbench for the q-TSPP determinant certificate", "qtspp");
  app.require_subcommand(1);
  app.fallthrough();
  add_common(app, cfg);
  auto* cofactors = app.add_subcommand("cofactors", "compute and write a table of B'(n, j)");
  auto* guess = app.add_subcommand("guess", "modular recurrence guess at one q-point");
  auto* reconstruct = app.add_subcommand("reconstruct", "sweep q-points and reconstruct integer coefficients");
  auto* verify = app.add_subcommand("verify", "identity and plausibility checks");
  auto* pipeline = app.add_subcommand("pipeline", "every stage in order");
  verify->require_subcommand(1);
  verify->fallthrough();
  std::string which;
  for (const char* name : {"soichi", "okada", "normalization", "extended", "ct", "brute", "factors"}) {
    verify->add_subcommand(name, std::string("check ") + name)->fallthrough()->callback([&which, name] {
      which = name;
    });
  }
  for (auto* sub : {cofactors, guess, reconstruct, pipeline}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    validate(cfg, *guess || *reconstruct || (*pipeline && !cfg.q1));
    Session s(cfg, out, err);
    if (*cofactors) return s.cofactors();
    if (*guess) return s.guess_cmd();
    if (*reconstruct) return s.reconstruct_cmd();
    if (*verify) return s.verify_cmd(which);
    if (*pipeline) return s.pipeline();
  } catch (const StageFailed& e) {
    err << "stage failed: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kComputation;
  }
  return kUsage;
}

}  // namespace qtspp::cli
