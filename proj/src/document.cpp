// Copyright 2026 The hmkt Authors
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

#include "hmkt/document.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hmkt/error.hpp"

namespace hmkt {

namespace {

struct Token {
  enum Kind { kLabel, kColon, kEquals, kGt, kTilde, kComma } kind;
  std::string text;
  int column;
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

bool is_punct(char c) {
  return c == ',' || c == '=' || c == '>' || c == '~' || c == ':' || c == '#';
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    const char c = line[k];
    if (is_space(c)) {
      ++k;
      continue;
    }
    if (c == '#') break;
    const int column = static_cast<int>(k) + 1;
    if (is_punct(c)) {
      const Token::Kind kind = c == ',' ? Token::kComma
                               : c == '=' ? Token::kEquals
                               : c == '>' ? Token::kGt
                               : c == '~' ? Token::kTilde
                                          : Token::kColon;
      out.push_back({kind, std::string(1, c), column});
      ++k;
      continue;
    }
    const std::size_t start = k;
    while (k < line.size() && !is_space(line[k]) && !is_punct(line[k])) ++k;
    out.push_back({Token::kLabel, std::string(line.substr(start, k - start)), column});
  }
  return out;
}

// Cursor over one line's tokens with located errors.
class TokenCursor {
 public:
  explicit TokenCursor(const Line& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tokens.size(); }
  const Token& peek() const { return line_.tokens[pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    const int column = done() ? end_column() : peek().column;
    throw ParseError(line_.number, column, message);
  }

  const Token& expect(Token::Kind kind, const char* what) {
    if (done() || peek().kind != kind) fail(std::string("expected ") + what);
    return line_.tokens[pos_++];
  }

  bool accept(Token::Kind kind) {
    if (!done() && peek().kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

 private:
  int end_column() const {
    if (line_.tokens.empty()) return 1;
    const Token& last = line_.tokens.back();
    return last.column + static_cast<int>(last.text.size());
  }

  const Line& line_;
  std::size_t pos_ = 0;
};

struct LabelRef {
  std::string text;
  int line;
  int column;
};

struct LabelList {
  int line = 0;
  std::vector<LabelRef> labels;
};

struct PrefRow {
  LabelRef agent;
  std::vector<std::vector<LabelRef>> classes;
};

struct TypeLine {
  LabelRef object;
  LabelRef type;
};

struct PriorityLine {
  LabelRef type;
  std::vector<LabelRef> agents;
};

struct RawDoc {
  std::optional<LabelList> agents;
  std::optional<LabelList> objects;
  std::optional<int> endow_line;
  std::vector<std::pair<LabelRef, LabelRef>> endow;
  std::vector<PrefRow> prefs;
  std::vector<TypeLine> types;
  std::vector<PriorityLine> priorities;
};

LabelRef label_ref(const Token& t, int line) { return {t.text, line, t.column}; }

[[noreturn]] void fail_at(const LabelRef& ref, const std::string& message) {
  throw ParseError(ref.line, ref.column, message);
}

void parse_line(const Line& line, RawDoc& raw) {
  TokenCursor cur(line);
  const Token& head = cur.expect(Token::kLabel, "a section keyword");
  const std::string& key = head.text;
  if (key == "agents" || key == "objects") {
    std::optional<LabelList>& slot = key == "agents" ? raw.agents : raw.objects;
    if (slot) {
      throw ParseError(line.number, head.column, "duplicate '" + key + ":' section");
    }
    cur.expect(Token::kColon, "':'");
    LabelList list{line.number, {}};
    while (!cur.done()) {
      if (cur.accept(Token::kComma)) continue;
      list.labels.push_back(label_ref(cur.expect(Token::kLabel, "a label"), line.number));
    }
    slot = std::move(list);
  } else if (key == "endow") {
    if (raw.endow_line) {
      throw ParseError(line.number, head.column, "duplicate 'endow:' section");
    }
    raw.endow_line = line.number;
    cur.expect(Token::kColon, "':'");
    while (!cur.done()) {
      if (cur.accept(Token::kComma)) continue;
      LabelRef agent = label_ref(cur.expect(Token::kLabel, "an agent label"), line.number);
      cur.expect(Token::kEquals, "'='");
      LabelRef object = label_ref(cur.expect(Token::kLabel, "an object label"), line.number);
      raw.endow.emplace_back(std::move(agent), std::move(object));
    }
  } else if (key == "pref") {
    PrefRow row{label_ref(cur.expect(Token::kLabel, "an agent label"), line.number), {}};
    cur.expect(Token::kColon, "':'");
    row.classes.push_back({label_ref(cur.expect(Token::kLabel, "an object label"), line.number)});
    while (!cur.done()) {
      if (cur.accept(Token::kGt)) {
        row.classes.emplace_back();
      } else if (!cur.accept(Token::kTilde)) {
        cur.fail("expected '>' or '~'");
      }
      row.classes.back().push_back(
          label_ref(cur.expect(Token::kLabel, "an object label"), line.number));
    }
    raw.prefs.push_back(std::move(row));
  } else if (key == "type") {
    TypeLine t;
    t.object = label_ref(cur.expect(Token::kLabel, "an object label"), line.number);
    cur.expect(Token::kEquals, "'='");
    t.type = label_ref(cur.expect(Token::kLabel, "a type label"), line.number);
    if (!cur.done()) cur.fail("unexpected token after type assignment");
    raw.types.push_back(std::move(t));
  } else if (key == "priority") {
    PriorityLine p;
    p.type = label_ref(cur.expect(Token::kLabel, "a type label"), line.number);
    cur.expect(Token::kColon, "':'");
    p.agents.push_back(label_ref(cur.expect(Token::kLabel, "an agent label"), line.number));
    while (!cur.done()) {
      cur.expect(Token::kGt, "'>'");
      p.agents.push_back(label_ref(cur.expect(Token::kLabel, "an agent label"), line.number));
    }
    raw.priorities.push_back(std::move(p));
  } else {
    throw ParseError(line.number, head.column, "unknown section '" + key + "'");
  }
}

std::map<std::string, int> index_labels(const LabelList& list,
                                        std::vector<std::string>& names,
                                        const char* what) {
  std::map<std::string, int> index;
  for (const LabelRef& ref : list.labels) {
    if (!index.emplace(ref.text, static_cast<int>(names.size())).second) {
      fail_at(ref, std::string("duplicate ") + what + " label '" + ref.text + "'");
    }
    names.push_back(ref.text);
  }
  return index;
}

int lookup(const std::map<std::string, int>& index, const LabelRef& ref,
           const char* what) {
  auto it = index.find(ref.text);
  if (it == index.end()) fail_at(ref, std::string("unknown ") + what + " '" + ref.text + "'");
  return it->second;
}

}  // namespace

MarketDoc parse_market_doc(std::string_view text) {
  RawDoc raw;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    ++number;
    Line line{number, tokenize(text.substr(start, end - start))};
    if (!line.tokens.empty()) parse_line(line, raw);
    if (end == text.size()) break;
    start = end + 1;
  }

  if (!raw.agents) throw ParseError(1, 1, "missing 'agents:' section");
  if (!raw.objects) throw ParseError(1, 1, "missing 'objects:' section");

  MarketDoc doc;
  const auto agent_index = index_labels(*raw.agents, doc.agents, "agent");
  const auto object_index = index_labels(*raw.objects, doc.objects, "object");
  const int n = static_cast<int>(doc.agents.size());
  if (n == 0) throw ParseError(raw.agents->line, 1, "no agents declared");
  if (static_cast<int>(doc.objects.size()) != n) {
    throw ParseError(raw.objects->line, 1,
                     "expected " + std::to_string(n) + " objects, one per agent");
  }
  if (n > kMaxIndices) {
    throw ParseError(raw.agents->line, 1,
                     "at most " + std::to_string(kMaxIndices) + " agents supported");
  }

  if (!raw.endow_line) throw ParseError(1, 1, "missing 'endow:' section");

  doc.endow.assign(n, -1);
  std::vector<bool> endowed_object(n, false);
  for (const auto& [agent_ref, object_ref] : raw.endow) {
    const int i = lookup(agent_index, agent_ref, "agent");
    const int o = lookup(object_index, object_ref, "object");
    if (doc.endow[i] >= 0) fail_at(agent_ref, "agent '" + agent_ref.text + "' endowed twice");
    if (endowed_object[o]) fail_at(object_ref, "object '" + object_ref.text + "' endowed twice");
    doc.endow[i] = o;
    endowed_object[o] = true;
  }
  for (int i = 0; i < n; ++i) {
    if (doc.endow[i] < 0) {
      throw ParseError(*raw.endow_line, 1,
                       "agent '" + doc.agents[i] + "' has no endowment");
    }
  }

  doc.prefs.assign(n, {});
  std::vector<bool> has_row(n, false);
  for (const PrefRow& row : raw.prefs) {
    const int i = lookup(agent_index, row.agent, "agent");
    if (has_row[i]) fail_at(row.agent, "duplicate preference row for '" + row.agent.text + "'");
    has_row[i] = true;
    std::vector<bool> seen(n, false);
    for (const auto& cls : row.classes) {
      std::vector<int> ids;
      for (const LabelRef& ref : cls) {
        const int o = lookup(object_index, ref, "object");
        if (seen[o]) fail_at(ref, "object '" + ref.text + "' listed twice");
        seen[o] = true;
        ids.push_back(o);
      }
      doc.prefs[i].push_back(std::move(ids));
    }
    for (int o = 0; o < n; ++o) {
      if (!seen[o]) {
        fail_at(row.agent, "preference row of '" + row.agent.text +
                               "' omits object '" + doc.objects[o] + "'");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!has_row[i]) {
      throw ParseError(raw.agents->line, 1,
                       "agent '" + doc.agents[i] + "' has no preference row");
    }
  }

  if (!raw.types.empty()) {
    std::vector<std::string> raw_type(n);
    std::vector<bool> typed_object(n, false);
    for (const TypeLine& t : raw.types) {
      const int o = lookup(object_index, t.object, "object");
      if (typed_object[o]) fail_at(t.object, "object '" + t.object.text + "' typed twice");
      typed_object[o] = true;
      raw_type[o] = t.type.text;
    }
    for (int o = 0; o < n; ++o) {
      if (!typed_object[o]) {
        throw ParseError(raw.types.front().object.line, 1,
                         "object '" + doc.objects[o] + "' has no type");
      }
    }
    std::map<std::string, int> type_index;
    doc.type_of.assign(n, -1);
    for (int o = 0; o < n; ++o) {
      auto [it, fresh] = type_index.emplace(raw_type[o], static_cast<int>(doc.type_labels.size()));
      if (fresh) doc.type_labels.push_back(raw_type[o]);
      doc.type_of[o] = it->second;
    }
    doc.priorities.assign(doc.type_labels.size(), {});
    for (const PriorityLine& p : raw.priorities) {
      const int x = lookup(type_index, p.type, "type");
      if (!doc.priorities[x].empty()) fail_at(p.type, "duplicate priority row for type '" + p.type.text + "'");
      AgentSet owners;
      for (int o = 0; o < n; ++o) {
        if (doc.type_of[o] == x) owners.insert(std::find(doc.endow.begin(), doc.endow.end(), o) - doc.endow.begin());
      }
      AgentSet listed;
      for (const LabelRef& ref : p.agents) {
        const int i = lookup(agent_index, ref, "agent");
        if (listed.contains(i)) fail_at(ref, "agent '" + ref.text + "' ranked twice");
        if (!owners.contains(i)) fail_at(ref, "agent '" + ref.text + "' owns no copy of type '" + p.type.text + "'");
        listed.insert(i);
        doc.priorities[x].push_back(i);
      }
      if (listed != owners) fail_at(p.type, "priority row of type '" + p.type.text + "' omits an owner");
    }
  } else if (!raw.priorities.empty()) {
    fail_at(raw.priorities.front().type, "priority rows require type lines");
  }
  return doc;
}

std::string emit_market_doc(const MarketDoc& doc) {
  std::ostringstream os;
  const int n = static_cast<int>(doc.agents.size());
  os << "agents:";
  for (const auto& a : doc.agents) os << ' ' << a;
  os << "\nobjects:";
  for (const auto& o : doc.objects) os << ' ' << o;
  os << "\nendow:";
  for (int i = 0; i < n; ++i) os << ' ' << doc.agents[i] << '=' << doc.objects[doc.endow[i]];
  os << '\n';
  for (int i = 0; i < n; ++i) {
    os << "pref " << doc.agents[i] << ':';
    bool first_class = true;
    for (auto cls : doc.prefs[i]) {
      std::sort(cls.begin(), cls.end());
      bool first = true;
      for (int o : cls) {
        os << (first ? (first_class ? " " : " > ") : " ~ ") << doc.objects[o];
        first = false;
      }
      first_class = false;
    }
    os << '\n';
  }
  if (doc.has_types()) {
    // Renumber types by first appearance in object order.
    std::vector<int> renum(doc.type_labels.size(), -1);
    std::vector<int> order;
    for (int o = 0; o < n; ++o) {
      const int x = doc.type_of[o];
      if (renum[x] < 0) {
        renum[x] = static_cast<int>(order.size());
        order.push_back(x);
      }
    }
    for (int o = 0; o < n; ++o) {
      os << "type " << doc.objects[o] << '=' << doc.type_labels[doc.type_of[o]] << '\n';
    }
    for (int x : order) {
      if (x >= static_cast<int>(doc.priorities.size()) || doc.priorities[x].empty()) continue;
      os << "priority " << doc.type_labels[x] << ':';
      bool first = true;
      for (int i : doc.priorities[x]) {
        os << (first ? " " : " > ") << doc.agents[i];
        first = false;
      }
      os << '\n';
    }
  }
  return os.str();
}

Market to_market(const MarketDoc& doc) {
  const int n = static_cast<int>(doc.agents.size());
  std::vector<std::vector<int>> ranks(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < doc.prefs[i].size(); ++r) {
      for (int o : doc.prefs[i][r]) ranks[i][o] = static_cast<int>(r);
    }
  }
  return Market(doc.endow, std::move(ranks));
}

namespace {

std::string object_label(int o) {
  if (o < 26) return std::string(1, static_cast<char>('a' + o));
  return "o" + std::to_string(o + 1);
}

}  // namespace

MarketDoc doc_from_market(const Market& m) {
  MarketDoc doc;
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    doc.agents.push_back(std::to_string(i + 1));
    doc.objects.push_back(object_label(i));
  }
  doc.endow = m.endowments();
  doc.prefs.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < m.class_count(i); ++r) {
      doc.prefs[i].push_back(m.rank_class(i, r).to_vector());
    }
  }
  return doc;
}

void attach_types(MarketDoc& doc, const typed::TypeStructure& t,
                  const typed::PriorityStructure* p) {
  doc.type_of = t.type_of;
  doc.type_labels.clear();
  for (int x = 0; x < t.type_count; ++x) doc.type_labels.push_back("x" + std::to_string(x + 1));
  doc.priorities.assign(t.type_count, {});
  if (p != nullptr) doc.priorities = p->orders;
}

std::optional<typed::TypeStructure> doc_types(const MarketDoc& doc) {
  if (!doc.has_types()) return std::nullopt;
  return typed::TypeStructure{doc.type_of, static_cast<int>(doc.type_labels.size())};
}

typed::PriorityStructure doc_priorities(const MarketDoc& doc, const Market& m,
                                        const typed::TypeStructure& t) {
  typed::PriorityStructure p;
  for (int x = 0; x < t.type_count; ++x) {
    const AgentSet owners = t.owners(m, x);
    if (x < static_cast<int>(doc.priorities.size()) && !doc.priorities[x].empty()) {
      p.orders.push_back(doc.priorities[x]);
    } else if (owners.size() == 1) {
      p.orders.push_back(owners.to_vector());
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "no priority row for type '" + doc.type_labels[x] + "'");
    }
  }
  typed::validate_priorities(m, t, p);
  return p;
}

Allocation parse_allocation(const MarketDoc& doc, std::string_view text) {
  const int n = static_cast<int>(doc.agents.size());
  std::vector<int> assign(n, -1);
  const auto find = [](const std::vector<std::string>& names, std::string_view label) {
    auto it = std::find(names.begin(), names.end(), label);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
  };
  const auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, "allocation: " + msg);
  };
  const std::vector<Token> toks = tokenize(text);
  std::size_t k = 0;
  while (k < toks.size()) {
    if (toks[k].kind == Token::kComma) {
      ++k;
      continue;
    }
    if (k + 2 >= toks.size() || toks[k].kind != Token::kLabel || toks[k + 1].kind != Token::kEquals ||
        toks[k + 2].kind != Token::kLabel) {
      fail("expected agent=object at column " + std::to_string(toks[k].column));
    }
    const int i = find(doc.agents, toks[k].text);
    const int o = find(doc.objects, toks[k + 2].text);
    if (i < 0) fail("unknown agent '" + toks[k].text + "'");
    if (o < 0) fail("unknown object '" + toks[k + 2].text + "'");
    if (assign[i] >= 0) fail("agent '" + toks[k].text + "' assigned twice");
    assign[i] = o;
    k += 3;
  }
  for (int i = 0; i < n; ++i) {
    if (assign[i] < 0) fail("agent '" + doc.agents[i] + "' unassigned");
  }
  return Allocation(std::move(assign));
}

}  // namespace hmkt
