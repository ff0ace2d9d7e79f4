// Copyright 2026 The proofsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "proofsched/error.hpp"
#include "proofsched/io.hpp"
#include "proofsched/process.hpp"
#include "proofsched/proofnet.hpp"
#include "proofsched/schedule.hpp"
#include "proofsched/translate.hpp"

namespace proofsched::cli {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string variant = "async";
  std::string to;
  bool total = false;
  bool json = false;
  std::string dot;
  std::size_t cap_atoms = SearchOptions{}.cap_atoms;
  std::uint64_t cap_switchings = kDefaultSwitchingCap;
  std::optional<std::uint64_t> seed;
  std::string steps;
  std::string pairing;
  std::string schedule;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_dot(const Options& o, const ProofStructure& net, std::ostream& out) {
  if (o.dot.empty()) return;
  std::string text = to_dot(net);
  if (o.dot == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.dot);
  if (!f) throw UsageError("cannot write " + o.dot);
  f << text;
}

const std::string& input(const Options& o, std::size_t i, const char* what) {
  if (i >= o.inputs.size()) throw UsageError(std::string("missing ") + what);
  return o.inputs[i];
}

Term term_arg(const Options& o, std::size_t i = 0) { return parse_term(input(o, i, "term")); }

Variant variant_of(const Options& o) {
  try {
    return parse_variant(o.variant);
  } catch (const Error&) {
    throw UsageError("--variant must be sync or async");
  }
}

std::string pairs_text(const std::vector<LocPair>& steps) {
  std::string s = "[";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) s += ", ";
    s += "(" + std::to_string(steps[i].first) + "," + std::to_string(steps[i].second) + ")";
  }
  return s + "]";
}

std::vector<LocPair> steps_arg(const std::string& text) {
  std::vector<LocPair> out;
  // Order matters here, so the pairing parser is not used.
  std::string s = text;
  for (char& ch : s) {
    if (ch == '[' || ch == ']' || ch == '(' || ch == ')' || ch == ',' || ch == '{' || ch == '}') {
      ch = ' ';
    }
  }
  std::istringstream in(s);
  std::vector<int> nums;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw UsageError("bad location " + tok);
    } catch (const std::logic_error&) {
      throw UsageError("bad location " + tok);
    }
  }
  if (nums.size() % 2) throw UsageError("--steps needs pairs of locations");
  for (std::size_t i = 0; i < nums.size(); i += 2) out.push_back({nums[i], nums[i + 1]});
  return out;
}

Schedule schedule_arg(const Options& o) {
  if (o.schedule.empty()) throw UsageError("missing --schedule");
  return schedule_from_json(parse_json(read_file(o.schedule)));
}

std::string consistency_text(const Pairing& c, const Consistency& k) {
  if (k.consistent) return "consistent";
  if (k.not_closed) return "inconsistent not-closed at " + std::to_string(*k.not_closed);
  std::set<Location> on(k.cycle.begin(), k.cycle.end());
  Pairing cyc;
  for (auto [a, b] : c.pairs()) {
    if (on.count(a) || on.count(b)) cyc.add(a, b);
  }
  return "inconsistent cycle " + cyc.to_string();
}

Json consistency_json(const Pairing& c, const Consistency& k) {
  Json j{{"pairing", to_json(c)}, {"consistent", k.consistent}};
  if (k.not_closed) j["not_closed"] = *k.not_closed;
  if (!k.cycle.empty()) j["cycle"] = k.cycle;
  return j;
}

// ---------------------------------------------------------------------------
// Verbs

int cmd_parse(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  if (o.json) {
    out << Json{{"term", p.to_string()},
                {"canonical", canonicalize(p).to_string()},
                {"locations", locations(p)}}
               .dump(2)
        << "\n";
  } else {
    out << p.to_string() << "\n";
  }
  return kOk;
}

int cmd_congruent(const Options& o, std::ostream& out) {
  Term p = term_arg(o, 0);
  Term q = term_arg(o, 1);
  bool yes = congruent(p, q);
  if (o.json) {
    out << Json{{"congruent", yes}}.dump(2) << "\n";
  } else {
    out << (yes ? "congruent" : "not congruent") << "\n";
  }
  return yes ? kOk : kNegative;
}

int cmd_execute(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  std::vector<LocPair> steps = steps_arg(o.steps);
  try {
    ExecutionTrace t = execute(p, steps);
    if (o.json) {
      out << to_json(t).dump(2) << "\n";
    } else {
      out << t.final.to_string() << "\n";
    }
    return kOk;
  } catch (const StepError& e) {
    if (o.json) {
      out << Json{{"enabled", false}, {"step", e.index()}}.dump(2) << "\n";
    } else {
      out << "step " << e.index() << " not enabled: " << e.what() << "\n";
    }
    return kNegative;
  }
}

int cmd_reachable(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  std::vector<Reachable> rs = reachable(p);
  Json arr = Json::array();
  for (const Reachable& r : rs) {
    if (o.json) {
      arr.push_back(Json{{"pairing", to_json(r.pairing)}, {"term", r.term.to_string()}});
    } else {
      out << r.pairing.to_string() << " -> " << r.term.to_string() << "\n";
    }
  }
  if (o.json) out << arr.dump(2) << "\n";
  return kOk;
}

int cmd_pairings(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  std::vector<Pairing> cs = enumerate_pairings(p, o.total);
  Json arr = Json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Consistency k = is_consistent(p, cs[i]);
    if (o.json) {
      arr.push_back(consistency_json(cs[i], k));
    } else {
      out << "c" << i + 1 << " " << cs[i].to_string() << " " << consistency_text(cs[i], k) << "\n";
    }
  }
  if (o.json) out << arr.dump(2) << "\n";
  return kOk;
}

int cmd_consistent(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  if (o.pairing.empty()) throw UsageError("missing --pairing");
  Pairing c = parse_pairing(o.pairing);
  check_valid(p, c);
  Consistency k = is_consistent(p, c);
  std::vector<Pairing> subs;
  if (!k.consistent) subs = maximal_consistent_subpairings(p, c);
  if (o.json) {
    Json j = consistency_json(c, k);
    if (!k.consistent) {
      Json arr = Json::array();
      for (const Pairing& s : subs) arr.push_back(to_json(s));
      j["maximal_consistent"] = arr;
    }
    out << j.dump(2) << "\n";
  } else {
    out << consistency_text(c, k) << "\n";
    for (const Pairing& s : subs) out << "maximal consistent " << s.to_string() << "\n";
  }
  return k.consistent ? kOk : kNegative;
}

int cmd_type(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  Formula f = ttype(p, variant_of(o));
  if (o.json) {
    out << Json{{"variant", o.variant}, {"type", f.to_string()}}.dump(2) << "\n";
  } else {
    out << f.to_string() << "\n";
  }
  return kOk;
}

int cmd_proof(const Options& o, std::ostream& out) {
  TypedProcess tp = proof_assign(term_arg(o), variant_of(o));
  write_dot(o, tp.proof, out);
  if (o.dot != "-") out << to_json(tp.proof).dump(2) << "\n";
  return kOk;
}

int cmd_check_net(const Options& o, std::ostream& out) {
  ProofStructure net = net_from_json(parse_json(read_file(input(o, 0, "net file"))));
  std::string problem;
  try {
    validate(net);
  } catch (const Error& e) {
    problem = e.what();
  }
  DrResult r;
  if (problem.empty()) {
    r = dr_check(net, o.cap_switchings);
    if (!r.ok) problem = r.failure;
  }
  write_dot(o, net, out);
  if (o.json) {
    Json j{{"correct", problem.empty()},
           {"method", r.method == DrMethod::Exhaustive ? "exhaustive" : "contraction"}};
    if (!problem.empty()) j["failure"] = problem;
    if (!r.cycle.empty()) j["cycle"] = r.cycle;
    if (!r.ok && !r.switching.empty()) {
      Json sw = Json::object();
      for (auto [par, side] : r.switching) sw[std::to_string(par)] = side;
      j["switching"] = sw;
    }
    out << j.dump(2) << "\n";
  } else if (o.dot != "-") {
    out << (problem.empty() ? "correct" : "incorrect: " + problem) << "\n";
  }
  return problem.empty() ? kOk : kNegative;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  ProofStructure net = net_from_json(parse_json(read_file(input(o, 0, "net file"))));
  validate(net);
  NormalizeOptions no;
  if (o.seed) {
    no.order = CutOrder::Random;
    no.seed = *o.seed;
  }
  Normalized r = normalize(net, no);
  write_dot(o, r.net, out);
  if (o.dot == "-") return kOk;
  if (o.json) {
    Json pairs = Json::array();
    for (auto [a, b] : r.pairs) pairs.push_back({a, b});
    out << Json{{"steps", r.steps}, {"pairs", pairs}, {"net", to_json(r.net)}}.dump(2) << "\n";
  } else {
    out << "steps " << r.steps << "\n" << "pairs " << pairs_text(r.pairs) << "\n";
    out << to_json(r.net).dump(2) << "\n";
  }
  return kOk;
}

int cmd_synthesize(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  if (o.to.empty()) throw UsageError("missing --to");
  Term q = parse_term(o.to);
  SearchOptions so;
  so.cap_atoms = o.cap_atoms;
  SearchStats stats;
  std::optional<Schedule> s = synthesize(p, q, variant_of(o), so, &stats);
  if (!s) {
    if (o.json) {
      out << Json{{"schedule", nullptr}, {"nodes", stats.nodes}}.dump(2) << "\n";
    } else {
      out << "no schedule\n";
    }
    return kNegative;
  }
  write_dot(o, s->proof, out);
  if (o.dot != "-") out << to_json(*s).dump(2) << "\n";
  return kOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  ExecutionTrace t = replay(p, schedule_arg(o));
  if (o.json) {
    out << to_json(t).dump(2) << "\n";
  } else {
    out << pairs_text(t.steps) << " -> " << t.final.to_string() << "\n";
  }
  return kOk;
}

int cmd_induced_pairing(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  Pairing c = induced_pairing(p, schedule_arg(o));
  out << (o.json ? to_json(c).dump() : c.to_string()) << "\n";
  return kOk;
}

int cmd_roundtrip(const Options& o, std::ostream& out) {
  Term p = term_arg(o);
  bool all = true;
  Json arr = Json::array();
  for (const Pairing& c : maximal_consistent_pairings(p)) {
    Pairing back = induced_pairing(p, pairing_to_schedule(p, c));
    bool same = back == c;
    all = all && same;
    if (o.json) {
      arr.push_back(Json{{"pairing", to_json(c)}, {"induced", to_json(back)}, {"ok", same}});
    } else {
      out << c.to_string() << " -> " << back.to_string() << (same ? " ok" : " MISMATCH") << "\n";
    }
  }
  if (o.json) out << arr.dump(2) << "\n";
  return all ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using Handler = int (*)(const Options&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Handler>> verbs = {
      {"parse", "Parse a term and print it back", cmd_parse},
      {"congruent", "Decide structural congruence of two terms", cmd_congruent},
      {"execute", "Run a sequence of steps (--steps)", cmd_execute},
      {"reachable", "List every pairing and term reachable from a term", cmd_reachable},
      {"pairings", "List valid pairings with their consistency", cmd_pairings},
      {"consistent", "Check one pairing (--pairing)", cmd_consistent},
      {"type", "Print the type of a term", cmd_type},
      {"proof", "Print the proof assignment of a term as a net", cmd_proof},
      {"check-net", "Validate a net file and run the correctness criterion", cmd_check_net},
      {"normalize", "Eliminate the cuts of a net file", cmd_normalize},
      {"synthesize", "Search for a schedule to --to", cmd_synthesize},
      {"replay", "Replay a schedule file (--schedule) as an execution", cmd_replay},
      {"induced-pairing", "Pairing induced by a schedule file", cmd_induced_pairing},
      {"roundtrip", "Check pairing -> schedule -> pairing for all maximal pairings",
       cmd_roundtrip},
  };

  CLI::App app{"Schedules for multiplicative CCS as linear logic proofs", "proofsched"};
  app.require_subcommand(1);
  Options o;
  for (const auto& [name, help, fn] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("inputs", o.inputs, "Terms or files");
    sub->add_option("--variant", o.variant, "sync or async")->capture_default_str();
    sub->add_option("--to", o.to, "Target term");
    sub->add_flag("--total", o.total, "Only total pairings");
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_option("--dot", o.dot, "Write the net as DOT to a file ('-' for stdout)");
    sub->add_option("--cap-atoms", o.cap_atoms, "Search atom cap")->capture_default_str();
    sub->add_option("--cap-switchings", o.cap_switchings, "Exhaustive switching cap");
    sub->add_option("--seed", o.seed, "Seed for the random cut order");
    sub->add_option("--steps", o.steps, "Steps such as \"(1,2) (3,4)\"");
    sub->add_option("--pairing", o.pairing, "Pairing such as \"(1,2) (3,4)\"");
    sub->add_option("--schedule", o.schedule, "Schedule JSON file");
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  for (const auto& [name, help, fn] : verbs) {
    if (!app.got_subcommand(name)) continue;
    try {
      return fn(o, out);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n";
      return kUsage;
    } catch (const Error& e) {
      err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
      if (e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::DuplicateLocation) return kUsage;
      if (e.kind() == ErrorKind::CapExceeded) return kCapExceeded;
      return kNegative;
    }
  }
  return kUsage;
}

}  // namespace proofsched::cli
