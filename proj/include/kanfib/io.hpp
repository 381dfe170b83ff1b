#pragma once

#include "kanfib/action.hpp"

#include <iosfwd>

namespace kanfib {

// Line-oriented document: named blocks for simplicial sets, groupoids, crossed
// modules, actions and maps. Parsing accepts "->" and the arrow glyph; the
// canonical serialization sorts blocks by (type, name), emits "->", cells in
// id order and levels ascending, so serialize(parse(s)) is byte-stable.
struct ActionBlock {
  std::string name;
  std::string groupoid;                  // name of the groupoid acted on
  std::string group;                     // one-object groupoid (1-group action)
  std::string crossed_module;            // crossed module (2-group action)
  std::vector<GroupoidFunctor> phi;
  std::vector<std::vector<int>> theta;   // empty for 1-group actions
};

struct MapBlock {
  std::string name;
  std::string from, to;                  // names of sset blocks
  std::vector<std::vector<Cell>> level;
};

struct Document {
  std::vector<std::pair<std::string, SimplicialSet>> ssets;
  std::vector<std::pair<std::string, FiniteGroupoid>> groupoids;
  std::vector<std::pair<std::string, CrossedModule>> crossed_modules;
  std::vector<ActionBlock> actions;
  std::vector<MapBlock> maps;

  const SimplicialSet* find_sset(const std::string& name) const;
  const FiniteGroupoid* find_groupoid(const std::string& name) const;
  const CrossedModule* find_crossed_module(const std::string& name) const;
  const ActionBlock* find_action(const std::string& name) const;
  const MapBlock* find_map(const std::string& name) const;
};

Document parse_document(const std::string& text);
Document load_document(const std::string& path);
std::string serialize_document(const Document& doc);

// Block constructors used by the CLI build commands.
void add_sset(Document& doc, const std::string& name, const SimplicialSet& s);
void add_groupoid(Document& doc, const std::string& name, const FiniteGroupoid& g);
void add_map(Document& doc, const std::string& name, const std::string& from,
             const std::string& to, const SimplicialMap& m);

// Resolve an action block into a validated strict action (1-group form).
StrictAction action_from_block(const Document& doc, const ActionBlock& blk);
Strict2GroupAction action2_from_block(const Document& doc, const ActionBlock& blk);

} // namespace kanfib
