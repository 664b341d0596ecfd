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

#ifndef HMKT_DOCUMENT_HPP
#define HMKT_DOCUMENT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmkt/market.hpp"
#include "hmkt/typed.hpp"

namespace hmkt {

// A market with its external labels, as read from or written to the
// line-oriented "hmkt" text format:
//
//   # comment
//   agents: 1 2 3
//   objects: a b c
//   endow: 1=a 2=b 3=c
//   pref 1: b > a > c
//   pref 2: a ~ b ~ c
//   pref 3: b > c > a
//   type a=x            (optional; one line per object)
//   priority x: 1 > 3   (optional; one line per type)
//
// Sections may appear in any order. Labels are runs of characters other than
// whitespace and the punctuation , = > ~ : #.
struct MarketDoc {
  std::vector<std::string> agents;
  std::vector<std::string> objects;
  std::vector<int> endow;  // agent -> object
  // prefs[agent]: indifference classes, best first.
  std::vector<std::vector<std::vector<int>>> prefs;
  // Empty when the document has no type lines.
  std::vector<std::string> type_labels;
  std::vector<int> type_of;  // object -> type id
  // priorities[type]: agents, highest first; empty when not given.
  std::vector<std::vector<int>> priorities;

  bool has_types() const { return !type_of.empty(); }
};

// Throws ParseError (with line and column) on malformed, duplicated,
// incomplete or non-bijective content.
MarketDoc parse_market_doc(std::string_view text);

// Canonical text: fixed section order, objects within a class by index, type
// ids by first appearance in object order.
std::string emit_market_doc(const MarketDoc& doc);

Market to_market(const MarketDoc& doc);

// Labels agents "1".."n" and objects "a".."z", then "o27", "o28", ...
MarketDoc doc_from_market(const Market& m);

// Adds type lines (and priority lines when `p` is given) to `doc`. Type labels
// are "x1", "x2", ... in type id order.
void attach_types(MarketDoc& doc, const typed::TypeStructure& t,
                  const typed::PriorityStructure* p = nullptr);

std::optional<typed::TypeStructure> doc_types(const MarketDoc& doc);

// Priority orders from the document. Types with a single owner may omit
// theirs. Throws Error(kInvalidArgument) when a multi-owner type has none.
typed::PriorityStructure doc_priorities(const MarketDoc& doc, const Market& m,
                                        const typed::TypeStructure& t);

// Parses "1=b,2=a,3=c" using the document's labels; every agent must appear
// once and the objects must be distinct. Throws Error(kInvalidArgument).
Allocation parse_allocation(const MarketDoc& doc, std::string_view text);

}  // namespace hmkt

#endif  // HMKT_DOCUMENT_HPP
