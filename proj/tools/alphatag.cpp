#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "alphatag/cutoffs.hpp"
#include "alphatag/document.hpp"
#include "alphatag/game.hpp"
#include "alphatag/service.hpp"

namespace at = alphatag;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

at::Rational parse_alpha(const std::string& text) {
  at::Rational a;
  try {
    a = at::parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError("invalid alpha '" + text + "': " + e.what());
  }
  if (a < at::Rational(1)) throw UsageError("alpha must be >= 1 (got " + a.str() + ")");
  return a;
}

at::Rational parse_value(const std::string& text, const char* what) {
  try {
    return at::parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "': " + e.what());
  }
}

at::Natural parse_natural(const std::string& text, const char* what) {
  try {
    return at::Natural::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "': " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out_path);
  f << text;
}

std::string dump(const at::Json& doc) { return doc.dump(2) + "\n"; }

// Cache location: --cache wins, then $TAG_CACHE_DIR/cutoffs.json, else none.
struct CacheArgs {
  std::string path;
  bool resume = false;
  bool disabled = false;
  unsigned jobs = 0;
};

std::string cache_path(const CacheArgs& args) {
  if (args.disabled) return {};
  if (!args.path.empty()) return args.path;
  if (const char* dir = std::getenv("TAG_CACHE_DIR"); dir && *dir)
    return (std::filesystem::path(dir) / "cutoffs.json").string();
  return {};
}

void load_cache(at::CutoffCache& cache, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return;
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    cache.load_json(ss.str());
  } catch (const std::exception& e) {
    throw UsageError("bad cache file " + path + ": " + e.what());
  }
}

void save_cache(const at::CutoffCache& cache, const std::string& path) {
  if (path.empty()) return;
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write cache " + path);
  f << cache.to_json();
}

void add_cache_options(CLI::App* cmd, CacheArgs& args) {
  cmd->add_option("--cache", args.path, "Cutoff cache file (default $TAG_CACHE_DIR/cutoffs.json)");
  cmd->add_flag("--resume", args.resume, "Seed the computation from the cache file");
  cmd->add_flag("--no-cache", args.disabled, "Neither read nor write a cache file");
  cmd->add_option("-j,--jobs", args.jobs, "Worker threads (0 = all cores)");
}

at::CutoffCensus census(const at::Rational& from, const at::Rational& to, const CacheArgs& args) {
  at::CutoffCache cache;
  const std::string path = cache_path(args);
  if (args.resume && !path.empty()) load_cache(cache, path);
  at::EnumerateOptions opts;
  opts.cache = &cache;
  opts.jobs = args.jobs;
  auto result = at::enumerate_cutoffs(from, to, opts);
  save_cache(cache, path);
  return result;
}

// Interactive game on stdin/stdout. The human moves first.
int play(const at::Rational& alpha, const at::Natural& pile) {
  at::Solver solver(alpha);
  at::GameState st = at::initial_state(alpha, pile);
  std::cout << "alpha = " << alpha.str() << ", pile = " << pile.str() << "\n";
  if (st.is_terminal()) {
    std::cout << "You cannot take any stones. You lose.\n";
    return kExitOk;
  }
  if (solver.classify(st) == at::Outcome::P)
    std::cout << "Warning: this is a P position. Every move loses against best play.\n";
  else
    std::cout << "This is an N position. You can force a win.\n";

  std::string line;
  while (true) {
    std::cout << "pile " << st.pile.str() << ", you may take 1.." << st.legal_max().str()
              << " (h = hint, q = quit)> " << std::flush;
    if (!std::getline(std::cin, line) || line == "q") {
      std::cout << "\nbye\n";
      return kExitOk;
    }
    if (line == "h") {
      auto advice = solver.best_move(st);
      auto z = at::zeckendorf(solver.sequence(), st.pile);
      std::cout << "parts:";
      for (const auto& p : z.parts(solver.sequence())) std::cout << " " << p.str();
      std::cout << "\n"
                << (advice.winning ? "winning move: take " : "losing position, stall with: take ")
                << advice.take.str() << "\n";
      continue;
    }
    at::Natural take;
    try {
      take = at::Natural::parse(line);
    } catch (const std::exception&) {
      std::cout << "enter a number, h or q\n";
      continue;
    }
    if (!st.is_legal(take)) {
      std::cout << "illegal: take must be between 1 and " << st.legal_max().str() << "\n";
      continue;
    }
    st = at::apply_move(st, take);
    if (st.is_terminal()) {
      std::cout << "You win.\n";
      return kExitOk;
    }
    auto reply = solver.best_move(st);
    st = at::apply_move(st, reply.take);
    std::cout << "engine takes " << reply.take.str() << (reply.theory_derived ? " (theory-derived)" : "") << "\n";
    if (st.is_terminal()) {
      std::cout << "pile " << st.pile.str() << ", cap " << st.cap.str() << ": you cannot move. Engine wins.\n";
      return kExitOk;
    }
  }
}

int verify(long integers, long frac_n_max, long frac_multiples, const std::string& half_limit) {
  bool ok = true;
  at::CutoffCache cache;
  at::EnumerateOptions opts;
  opts.cache = &cache;

  auto ints = at::verify_integer_cutoffs(integers, opts);
  std::cout << (ints.passed ? "PASS" : "FAIL") << " integer cutoffs 2.." << integers;
  for (long m : ints.missing) std::cout << " missing:" << m;
  std::cout << "\n";
  ok = ok && ints.passed;

  for (long n = 1; n <= frac_n_max; ++n) {
    auto rep = at::verify_fractional_cutoffs(n, frac_multiples, &cache);
    for (const auto& c : rep.cases) {
      std::cout << (c.ok ? "PASS" : "FAIL") << " x + 1/n: n=" << n << " x=" << c.x << " candidate "
                << c.candidate.str() << (c.is_cutoff ? " is" : " is NOT") << " a cutoff; below " << c.below.str()
                << ", max W(n) = " << c.window_max.str() << " (want " << c.expected_window_max.str() << ")\n";
    }
    ok = ok && rep.passed;
  }

  if (!half_limit.empty()) {
    auto survey = at::half_integer_survey(parse_value(half_limit, "half-integer limit"), &cache);
    std::cout << "half-integers up to " << half_limit << ", non-cutoffs:";
    for (const auto& h : survey)
      if (!h.is_cutoff) std::cout << " " << h.value.str();
    std::cout << "\n";
  }
  if (!ok) throw VerifyFailure("verification failed");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for alpha-TAG take-away games"};
  app.set_version_flag("--version", std::string(at::kToolVersion));
  app.require_subcommand(1);

  std::string alpha_text = "2";
  std::string format = "json";
  std::string out;

  auto* seq = app.add_subcommand("seq", "Losing pile sizes T(alpha)");
  std::size_t count = 0;
  std::string max_value;
  seq->add_option("-a,--alpha", alpha_text, "alpha as p/q, integer or decimal")->required();
  auto* count_opt = seq->add_option("-n,--count", count, "Number of terms");
  auto* max_opt = seq->add_option("--max", max_value, "Largest term value");
  count_opt->excludes(max_opt);
  seq->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* win = app.add_subcommand("window", "Windows W(P_i) for a range of indices");
  std::size_t index = 1;
  std::size_t index_to = 0;
  win->add_option("-a,--alpha", alpha_text)->required();
  win->add_option("-i,--index", index, "Owner index")->required();
  win->add_option("--to", index_to, "Last owner index (default: --index)");

  auto* zeck = app.add_subcommand("zeck", "Greedy representation of n");
  std::string n_text;
  zeck->add_option("-a,--alpha", alpha_text)->required();
  zeck->add_option("-n,--n", n_text, "Positive integer")->required();

  auto* cls = app.add_subcommand("classify", "N/P class and best move of a position");
  std::string pile_text;
  std::string cap_text;
  cls->add_option("-a,--alpha", alpha_text)->required();
  cls->add_option("-p,--pile", pile_text)->required();
  cls->add_option("-c,--cap", cap_text, "Move cap (default: pile - 1, the opening position)");

  auto* sseq = app.add_subcommand("s-seq", "Indices of recurrence S_1..S_count");
  sseq->add_option("-a,--alpha", alpha_text)->required();
  sseq->add_option("-n,--count", count)->required();

  auto* cut = app.add_subcommand("cutoffs", "All cutoffs in [from, to]");
  std::string from_text = "1";
  std::string to_text;
  CacheArgs cache_args;
  cut->add_option("--from", from_text);
  cut->add_option("--to", to_text)->required();
  cut->add_option("-o,--out", out, "Write the document here instead of stdout");
  add_cache_options(cut, cache_args);

  auto* gam = app.add_subcommand("gamma", "gamma(n) and gamma(n)/n^2 as CSV");
  std::string upto_text;
  std::string start_text = "5/2";
  std::string step_text = "1/2";
  gam->add_option("--upto", upto_text)->required();
  gam->add_option("--start", start_text);
  gam->add_option("--step", step_text);
  gam->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  gam->add_option("-o,--out", out);
  add_cache_options(gam, cache_args);

  auto* diag = app.add_subcommand("diag", "Recurrence, degree bounds, root and oscillation diagnostics");
  std::size_t diag_count = 200;
  diag->add_option("-a,--alpha", alpha_text)->required();
  diag->add_option("-n,--count", diag_count, "Q indices examined after certification");

  auto* ply = app.add_subcommand("play", "Play against the engine in the terminal");
  ply->add_option("-a,--alpha", alpha_text)->required();
  ply->add_option("-p,--pile", pile_text)->required();

  auto* srv = app.add_subcommand("serve", "Local JSON API for the play UI");
  std::string host = "127.0.0.1";
  int port = 8080;
  srv->add_option("--host", host);
  srv->add_option("--port", port);

  auto* ver = app.add_subcommand("verify", "Integer, x + 1/n and half-integer cutoff suites");
  long integers = 10;
  long frac_n = 2;
  long frac_multiples = 2;
  std::string half_limit = "31/2";
  ver->add_option("--integers", integers, "Check every integer in [2, N]")->check(CLI::Range(2L, 1000000L));
  ver->add_option("--fractional-n", frac_n, "Check x + 1/n for n = 1..N")->check(CLI::Range(1L, 6L));
  ver->add_option("--multiples", frac_multiples, "x = n!, 2 n!, ...")->check(CLI::Range(1L, 1000L));
  ver->add_option("--half-integers", half_limit, "Survey half-integers up to this limit ('' to skip)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*seq) {
      auto alpha = parse_alpha(alpha_text);
      if (!*count_opt && !*max_opt) throw UsageError("seq needs --count or --max");
      auto h = *max_opt ? at::Horizon::up_to(parse_natural(max_value, "max")) : at::Horizon::terms(count);
      auto s = at::generate(alpha, h);
      if (format == "text") {
        std::string line;
        for (const auto& t : s.within_horizon()) line += (line.empty() ? "" : ",") + t.str();
        std::cout << line << "\n";
      } else {
        std::cout << dump(at::sequence_document(s));
      }
    } else if (*win) {
      at::PSequence s(parse_alpha(alpha_text));
      if (index == 0) throw UsageError("the window of P_0 is undefined");
      std::cout << dump(at::windows_document(s, index, index_to == 0 ? index : index_to));
    } else if (*zeck) {
      at::PSequence s(parse_alpha(alpha_text));
      auto n = parse_natural(n_text, "n");
      if (n.is_zero()) throw UsageError("n must be positive");
      std::cout << dump(at::zeckendorf_document(s, n));
    } else if (*cls) {
      at::Solver solver(parse_alpha(alpha_text));
      auto st = at::initial_state(solver.alpha(), parse_natural(pile_text, "pile"));
      if (!cap_text.empty()) st.cap = parse_natural(cap_text, "cap");
      std::cout << dump(at::classify_document(solver, st));
    } else if (*sseq) {
      at::PSequence s(parse_alpha(alpha_text));
      std::cout << dump(at::s_sequence_document(s, count));
    } else if (*cut) {
      auto from = parse_value(from_text, "from");
      auto to = parse_value(to_text, "to");
      if (from < at::Rational(1) || !(from < to)) throw UsageError("need 1 <= from < to");
      emit(dump(at::cutoffs_document(census(from, to, cache_args))), out);
    } else if (*gam) {
      if (format == "json" && gam->count("--format") == 0) format = "csv";
      auto upto = parse_value(upto_text, "upto");
      auto start = parse_value(start_text, "start");
      auto step = parse_value(step_text, "step");
      if (start < at::Rational(1) || upto < start) throw UsageError("need 1 <= start <= upto");
      if (!(at::Rational(0) < step)) throw UsageError("step must be positive");
      auto c = census(at::Rational(1), std::max(upto, at::Rational(2)), cache_args);
      auto rows = at::gamma_rows(c.cutoffs, start, upto, step);
      emit(format == "csv" ? at::gamma_csv(rows) : dump(at::gamma_document(rows)), out);
      if (auto spread = at::gamma_ratio_spread(rows, at::Rational(10), upto); spread && spread->rows > 1) {
        std::cerr << "gamma(n)/n^2 over [10, " << upto.str() << "]: min " << spread->min << ", max " << spread->max
                  << ", relative variation " << spread->relative << "\n";
      }
    } else if (*diag) {
      std::cout << dump(at::diagnostics_document(parse_alpha(alpha_text), diag_count));
    } else if (*ply) {
      return play(parse_alpha(alpha_text), parse_natural(pile_text, "pile"));
    } else if (*srv) {
      at::GameService service;
      std::cerr << "serving on http://" << host << ":" << port << "\n";
      if (!at::run_http_server(service, host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return kExitUsage;
      }
    } else if (*ver) {
      return verify(integers, frac_n, frac_multiples, half_limit);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerifyFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  } catch (const at::CutoffError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitOk;
}
