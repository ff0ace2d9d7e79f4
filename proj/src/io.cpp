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

#include "proofsched/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "proofsched/error.hpp"

namespace proofsched {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::Parse, what);
}

LinkKind link_kind_from(const std::string& s) {
  for (LinkKind k : {LinkKind::Axiom, LinkKind::Cut, LinkKind::Tensor, LinkKind::Par,
                     LinkKind::ModPos, LinkKind::ModNeg}) {
    if (to_string(k) == s) return k;
  }
  bad("unknown link kind '" + s + "'");
}

void check_format(const Json& j) {
  if (!j.is_object()) bad("expected a JSON object");
  if (j.contains("format") && j.at("format") != kFormatVersion) {
    bad("unsupported format " + j.at("format").dump());
  }
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Json to_json(const Pairing& c) {
  Json out = Json::array();
  for (auto [a, b] : c.pairs()) out.push_back({a, b});
  return out;
}

Pairing pairing_from_json(const Json& j) {
  if (!j.is_array()) bad("pairing must be an array");
  Pairing c;
  for (const Json& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
        !p[1].is_number_integer()) {
      bad("pairing entries must be two-element integer arrays");
    }
    c.add(p[0].get<int>(), p[1].get<int>());
  }
  return c;
}

Pairing parse_pairing(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '[') return pairing_from_json(parse_json(text));
  Pairing c;
  std::string s(text);
  for (char& ch : s) {
    if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
  }
  std::istringstream in(s);
  std::vector<int> nums;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) bad("bad location '" + tok + "' in pairing");
    nums.push_back(v);
  }
  if (nums.size() % 2 != 0) bad("pairing has an odd number of locations");
  for (std::size_t k = 0; k < nums.size(); k += 2) c.add(nums[k], nums[k + 1]);
  return c;
}

Json to_json(const ExecutionTrace& t) {
  Json steps = Json::array();
  for (auto [a, b] : t.steps) steps.push_back({a, b});
  return Json{{"initial", t.initial.to_string()},
              {"steps", steps},
              {"final", t.final.to_string()}};
}

Json to_json(const ProofStructure& net) {
  Json links = Json::array();
  for (const auto& [id, l] : net.links()) {
    Json o;
    o["id"] = id;
    o["kind"] = std::string(to_string(l.kind));
    if (l.is_modality()) {
      o["channel"] = l.channel;
      o["location"] = l.location;
    }
    o["premisses"] = l.premisses;
    o["conclusions"] = l.conclusions;
    links.push_back(o);
  }
  Json wires = Json::array();
  for (const auto& [id, w] : net.wires()) {
    wires.push_back(Json{{"id", id}, {"formula", w.formula.to_string()}});
  }
  return Json{{"format", kFormatVersion},
              {"links", links},
              {"wires", wires},
              {"conclusions", net.conclusions()}};
}

ProofStructure net_from_json(const Json& j) {
  check_format(j);
  ProofStructure net;
  try {
    for (const Json& w : j.at("wires")) {
      net.insert_wire(parse_formula(w.at("formula").get<std::string>()), w.at("id").get<int>());
    }
    for (const Json& o : j.at("links")) {
      Link l;
      l.id = o.at("id").get<int>();
      l.kind = link_kind_from(o.at("kind").get<std::string>());
      if (l.is_modality()) {
        l.channel = o.at("channel").get<std::string>();
        l.location = o.at("location").get<int>();
      }
      l.premisses = o.at("premisses").get<std::vector<int>>();
      l.conclusions = o.at("conclusions").get<std::vector<int>>();
      net.insert_link(std::move(l), true);
    }
    net.set_conclusions(j.at("conclusions").get<std::vector<int>>());
  } catch (const Json::exception& e) {
    bad(std::string("malformed net JSON: ") + e.what());
  } catch (const std::out_of_range&) {
    bad("net JSON refers to an unknown wire");
  }
  return net;
}

std::string to_dot(const ProofStructure& net, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << escape(name) << "\" {\n";
  for (const auto& [id, l] : net.links()) {
    std::string label(to_string(l.kind));
    if (l.is_modality()) label += " " + l.channel + "^" + std::to_string(l.location);
    out << "  l" << id << " [label=\"" << escape(label) << "\"];\n";
  }
  for (std::size_t i = 0; i < net.conclusions().size(); ++i) {
    out << "  c" << i << " [shape=point];\n";
  }
  for (const auto& [id, w] : net.wires()) {
    if (w.producer == kNone) continue;
    out << "  l" << w.producer << " -> ";
    if (w.consumer == kConclusionConsumer) {
      out << "c" << w.port;
    } else if (w.consumer == kNone) {
      continue;
    } else {
      out << "l" << w.consumer;
    }
    out << " [label=\"" << escape(w.formula.to_string()) << "\"";
    if (w.consumer >= 0 && net.link(w.consumer).kind == LinkKind::Par) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json to_json(const Schedule& s) {
  Json inst = Json::object();
  for (const auto& [k, v] : s.instantiation.bindings()) inst[k] = v.to_string();
  return Json{{"format", kFormatVersion},
              {"variant", std::string(to_string(s.variant))},
              {"source", s.source.to_string()},
              {"target", s.target.to_string()},
              {"proof", to_json(s.proof)},
              {"instantiation", inst}};
}

Schedule schedule_from_json(const Json& j) {
  check_format(j);
  Schedule s;
  try {
    s.variant = parse_variant(j.at("variant").get<std::string>());
    s.source = parse_term(j.at("source").get<std::string>());
    s.target = parse_term(j.at("target").get<std::string>());
    s.proof = net_from_json(j.at("proof"));
    for (const auto& [k, v] : j.at("instantiation").items()) {
      s.instantiation.bind(k, parse_formula(v.get<std::string>()));
    }
  } catch (const Json::exception& e) {
    bad(std::string("malformed schedule JSON: ") + e.what());
  }
  return s;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1;
    int col = 1;
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, "invalid JSON");
  }
}

}  // namespace proofsched
