// heffter: construct, search for, and verify Heffter difference matrices
// over cyclotomic half-sets of prime fields, expand them into Heffter
// spaces, and derive mutually orthogonal cycle systems.
//
// Exit codes: 0 success / object valid, 1 not found / invalid, 2 usage or
// parse error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "heffter/heffter.hpp"

namespace {

using namespace heffter;
using clk = std::chrono::steady_clock;

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

std::vector<int> parse_signs(const std::string& text, std::int64_t k) {
  if (text.empty() || text == "standard") return std::vector<int>(k, 0);
  std::vector<int> signs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    signs.push_back(std::stoi(tok));
  if (static_cast<std::int64_t>(signs.size()) != k)
    throw parse_error("signs must list exactly k values");
  for (int s : signs)
    if (s != 0 && s != 1) throw parse_error("signs must be 0 or 1");
  return signs;
}

std::string signs_text(const std::vector<int>& signs) {
  std::string out;
  for (std::size_t i = 0; i < signs.size(); ++i)
    out += (i ? "," : "") + std::to_string(signs[i]);
  return out;
}

search_strategy parse_strategy(const std::string& s) {
  if (s == "exhaustive") return search_strategy::exhaustive;
  if (s == "random") return search_strategy::random;
  throw parse_error("strategy must be exhaustive or random");
}

void print_hdm_report(const heffter_difference_matrix& B) {
  hdm_report rep = verify_hdm(B);
  bool simple = verify_simple(B);
  std::cout << "(V," << B.k() << "," << B.r() << ") matrix over F_"
            << B.field().q() << ", signs " << signs_text(B.halfset.signs())
            << "\n";
  std::cout << "  i (zero-sum rows): " << (rep.zero_sum ? "ok" : "FAIL")
            << "\n";
  std::cout << "  ii (column membership): " << (rep.membership ? "ok" : "FAIL")
            << "\n";
  std::cout << "  iii (distinct ratios): " << (rep.ratios ? "ok" : "FAIL")
            << "\n";
  std::cout << "  simple: " << (simple ? "yes" : "no") << "\n";
  if (rep.witness) std::cout << "  witness: " << rep.witness->describe << "\n";
}

int cmd_verify(const std::string& path) {
  json j = load_json(path);
  std::string kind = certificate_kind(j);
  if (kind == "hdm") {
    auto B = hdm_from_json(j);
    print_hdm_report(B);
    return verify_hdm(B).valid() ? exit_ok : exit_fail;
  }
  if (kind == "space") {
    auto S = space_from_json(j);
    space_report rep = verify_space(S);
    std::cout << "(" << S.points() << "," << S.k() << ";" << S.r()
              << ") space over F_" << S.field().q() << "\n";
    std::cout << "  half-set: " << (rep.half_set ? "ok" : "FAIL") << "\n";
    std::cout << "  configuration: " << (rep.configuration ? "ok" : "FAIL")
              << "\n";
    std::cout << "  additive: " << (rep.additive ? "ok" : "FAIL") << "\n";
    std::cout << "  partial linear: " << (rep.partial_linear ? "ok" : "FAIL")
              << "\n";
    std::cout << "  resolvable: " << (rep.resolvable ? "ok" : "FAIL") << "\n";
    if (!rep.witness.empty()) std::cout << "  witness: " << rep.witness << "\n";
    return rep.valid() ? exit_ok : exit_fail;
  }
  throw parse_error("unknown certificate type " + kind);
}

struct search_args {
  std::int64_t q = 0;
  std::int64_t k = 0;
  std::string signs = "standard";
  std::int64_t r = -1;  // -1: maximize
  std::string strategy = "random";
  std::optional<std::int64_t> g;
  std::optional<std::uint64_t> seed;
  std::int64_t budget = 0;
  bool simple_only = false;
  std::string out;
};

int cmd_search(const search_args& a) {
  auto field = make_field(a.q, a.k, a.g);
  half_set hs = build_halfset(field, parse_signs(a.signs, a.k));

  if (a.r < 0) {
    auto res = exhaustive_max_r(hs, a.simple_only, a.budget);
    std::cout << "r_max = " << res.r_max
              << (res.exhaustive ? " (exhaustive over " : " (lower bound, ")
              << res.candidates << " candidate rows, " << res.nodes
              << " nodes)\n";
    if (!a.out.empty()) {
      search_metadata meta{"exhaustive", a.seed, res.nodes, res.exhaustive};
      save_json(a.out, hdm_to_json(res.witness, meta));
      std::cout << "wrote " << a.out << "\n";
    }
    return res.r_max > 0 ? exit_ok : exit_fail;
  }

  auto strat = parse_strategy(a.strategy);
  auto res = find_hdm(hs, a.r, strat, a.seed.value_or(0), a.budget);
  if (res.found()) {
    std::cout << "found a simple (V," << a.k << "," << a.r << ") matrix in "
              << res.nodes << " nodes\n";
    if (!a.out.empty()) {
      search_metadata meta{a.strategy, a.seed, res.nodes,
                           strat == search_strategy::exhaustive};
      save_json(a.out, hdm_to_json(*res.matrix, meta));
      std::cout << "wrote " << a.out << "\n";
    }
    return exit_ok;
  }
  if (res.status == search_status::not_found_exhaustive)
    std::cout << "exhaustive: no simple (V," << a.k << "," << a.r
              << ") matrix over this half-set\n";
  else
    std::cout << "not found within budget (" << res.nodes << " nodes)\n";
  return exit_fail;
}

struct scan_args {
  std::int64_t k = 6;
  std::int64_t r = 6;
  std::int64_t qmin = 0;
  std::int64_t qmax = 0;
  std::string signs = "standard";
  std::string strategy = "random";
  std::optional<std::uint64_t> seed;
  std::int64_t budget = 0;
  int jobs = 1;
  std::string out;
};

int cmd_scan(const scan_args& a) {
  std::vector<std::int64_t> primes;
  for (std::int64_t q = std::max<std::int64_t>(a.qmin, 3); q <= a.qmax; ++q)
    if (admissible(q, a.k)) primes.push_back(q);

  std::vector<scan_record> records(primes.size());
  auto strat = parse_strategy(a.strategy);
  std::mutex io;
  std::size_t next = 0;
  std::mutex next_mtx;

  auto worker = [&]() {
    for (;;) {
      std::size_t idx;
      {
        std::lock_guard<std::mutex> lk(next_mtx);
        if (next >= primes.size()) return;
        idx = next++;
      }
      std::int64_t q = primes[idx];
      scan_record rec;
      rec.q = q;
      rec.k = a.k;
      rec.r_target = a.r;
      rec.strategy = a.strategy;
      auto field = make_field(q, a.k);
      half_set hs = build_halfset(field, parse_signs(a.signs, a.k));
      rec.signs = hs.signs();
      // per-prime seed keeps records independent of scheduling
      std::uint64_t seed = a.seed.value_or(0) * 0x9e3779b97f4a7c15ULL + q;
      rec.seed = seed;
      auto t0 = clk::now();
      auto res = find_hdm(hs, a.r, strat, seed, a.budget);
      rec.wall_ms =
          std::chrono::duration<double, std::milli>(clk::now() - t0).count();
      rec.nodes = res.nodes;
      rec.found = res.found();
      rec.r_achieved = res.found() ? a.r : 0;
      if (res.found()) {
        search_metadata meta{a.strategy, seed, res.nodes,
                             strat == search_strategy::exhaustive};
        rec.certificate = hdm_to_json(*res.matrix, meta);
      }
      {
        std::lock_guard<std::mutex> lk(io);
        std::cout << "q=" << q << ": " << (rec.found ? "found" : "FAILED")
                  << " (" << rec.nodes << " nodes, " << rec.wall_ms
                  << " ms)\n";
      }
      records[idx] = std::move(rec);
    }
  };

  std::vector<std::thread> pool;
  int jobs = std::max(1, a.jobs);
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool all_found = true;
  json out = json::array();
  for (const auto& rec : records) {  // records already ordered by q
    all_found = all_found && rec.found;
    out.push_back(rec.to_json());
  }
  if (!a.out.empty()) {
    json doc;
    doc["k"] = a.k;
    doc["r"] = a.r;
    doc["qmin"] = a.qmin;
    doc["qmax"] = a.qmax;
    doc["records"] = out;
    save_json(a.out, doc);
    std::cout << "wrote " << a.out << "\n";
  }
  std::cout << records.size() << " primes, "
            << (all_found ? "all succeeded" : "some failed") << "\n";
  return all_found ? exit_ok : exit_fail;
}

int cmd_expand(const std::string& in, const std::string& out) {
  json j = load_json(in);
  if (certificate_kind(j) != "hdm")
    throw parse_error("expand needs an hdm certificate");
  auto B = hdm_from_json(j);
  if (!verify_hdm(B).valid()) {
    std::cout << "input matrix is invalid\n";
    return exit_fail;
  }
  auto S = expand(B);
  space_report rep = verify_space(S);
  if (!rep.valid()) {
    std::cout << "expanded space failed verification: " << rep.witness << "\n";
    return exit_fail;
  }
  save_json(out, space_to_json(S));
  std::cout << "wrote (" << S.points() << "," << S.k() << ";" << S.r()
            << ") space to " << out << "\n";
  return exit_ok;
}

int cmd_cycles(const std::string& in, const std::string& out_dir) {
  json j = load_json(in);
  if (certificate_kind(j) != "space")
    throw parse_error("cycles needs a space certificate");
  auto S = space_from_json(j);
  space_report rep = verify_space(S);
  if (!rep.valid()) {
    std::cout << "space failed verification: " << rep.witness << "\n";
    return exit_fail;
  }
  // one system in memory at a time; orthogonality regenerates per pair
  std::filesystem::create_directories(out_dir);
  const std::size_t r = S.classes.size();
  std::size_t cycles_each = 0;
  for (std::size_t h = 0; h < r; ++h) {
    cycle_system cs = make_cycle_system(S, h);
    cycles_each = cs.cycles.size();
    auto crep = verify_cycle_system(cs);
    if (!crep.valid) {
      std::cout << "system " << h + 1 << " failed verification: "
                << crep.witness << "\n";
      return exit_fail;
    }
    std::string path = out_dir + "/system_" + std::to_string(h + 1) + ".txt";
    std::ofstream f(path);
    f << cycle_system_to_text(cs, static_cast<std::int64_t>(h + 1));
  }
  std::int64_t pairs = 0, ortho = 0;
  for (std::size_t x = 0; x + 1 < r; ++x) {
    cycle_system a = make_cycle_system(S, x);
    for (std::size_t y = x + 1; y < r; ++y) {
      ++pairs;
      ortho += verify_orthogonal(a, make_cycle_system(S, y)) ? 1 : 0;
    }
  }
  std::cout << r << " systems, " << cycles_each << " cycles each, " << ortho
            << "/" << pairs << " pairs orthogonal\n";
  return ortho == pairs ? exit_ok : exit_fail;
}

int cmd_bound(std::int64_t k, std::int64_t r, std::optional<std::int64_t> q) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << "Q(" << k << "," << r << ") = " << q_bound(k, r)
     << ", 8k^4r = " << simplified_bound(k, r);
  if (q)
    os << ", q=" << *q << " > Q: "
       << (q_exceeds_bound(*q, k, r) ? "true" : "false");
  std::cout << os.str() << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heffter difference matrices, Heffter spaces, and orthogonal "
               "cycle systems over prime fields"};
  app.require_subcommand(1);

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "re-verify a certificate");
  verify->add_option("path", verify_path, "hdm or space certificate (JSON)")
      ->required();

  search_args sa;
  auto* search = app.add_subcommand("search", "search for an HDM");
  search->add_option("--q", sa.q, "field order (prime)")->required();
  search->add_option("--k", sa.k, "block size")->required();
  search->add_option("--signs", sa.signs, "comma list or 'standard'");
  search->add_option("--r", sa.r, "target r (omit to maximize exhaustively)");
  search->add_option("--strategy", sa.strategy, "exhaustive|random");
  std::int64_t g_opt = 0;
  auto* gflag = search->add_option("--g", g_opt, "primitive root override");
  std::uint64_t seed_opt = 0;
  auto* seedflag = search->add_option("--seed", seed_opt, "search seed");
  search->add_option("--budget", sa.budget, "node budget (0 = default)");
  search->add_flag("--simple-only", sa.simple_only,
                   "restrict max-r search to simple rows");
  search->add_option("--out", sa.out, "certificate output path");

  scan_args ca;
  auto* scan = app.add_subcommand("scan", "scan admissible primes in a range");
  scan->add_option("--k", ca.k, "block size")->required();
  scan->add_option("--r", ca.r, "target r")->required();
  scan->add_option("--qmin", ca.qmin, "range start")->required();
  scan->add_option("--qmax", ca.qmax, "range end (inclusive)")->required();
  scan->add_option("--signs", ca.signs, "comma list or 'standard'");
  scan->add_option("--strategy", ca.strategy, "exhaustive|random");
  std::uint64_t scan_seed = 0;
  auto* scan_seedflag = scan->add_option("--seed", scan_seed, "base seed");
  scan->add_option("--budget", ca.budget, "node budget per prime");
  scan->add_option("--jobs", ca.jobs, "parallel workers");
  scan->add_option("--out", ca.out, "records output path");

  std::string expand_in, expand_out;
  auto* expand = app.add_subcommand("expand", "expand an HDM into a space");
  expand->add_option("--in", expand_in, "hdm certificate")->required();
  expand->add_option("--out", expand_out, "space certificate")->required();

  std::string cycles_in, cycles_dir;
  auto* cycles =
      app.add_subcommand("cycles", "derive orthogonal cycle systems");
  cycles->add_option("--in", cycles_in, "space certificate")->required();
  cycles->add_option("--out-dir", cycles_dir, "output directory")->required();

  std::int64_t bk = 0, br = 0, bq = 0;
  auto* bound = app.add_subcommand("bound", "evaluate the Q(k,r) threshold");
  bound->add_option("--k", bk, "block size")->required();
  bound->add_option("--r", br, "rows")->required();
  auto* bqflag = bound->add_option("--q", bq, "candidate field order");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(verify_path);
    if (search->parsed()) {
      if (*gflag) sa.g = g_opt;
      if (*seedflag) sa.seed = seed_opt;
      return cmd_search(sa);
    }
    if (scan->parsed()) {
      if (*scan_seedflag) ca.seed = scan_seed;
      return cmd_scan(ca);
    }
    if (expand->parsed()) return cmd_expand(expand_in, expand_out);
    if (cycles->parsed()) return cmd_cycles(cycles_in, cycles_dir);
    if (bound->parsed())
      return cmd_bound(
          bk, br, *bqflag ? std::optional<std::int64_t>(bq) : std::nullopt);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_fail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
