#include "gralg/text_format.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "gralg/error.hpp"

namespace gralg {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line.substr(0, line.find('#')));
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_positive(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(tok, &used);
    if (used != tok.size() || value < 1)
      throw ParseError(line, fmt::format("'{}' is not a positive integer", tok));
    return value;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line, fmt::format("'{}' is not a positive integer", tok));
  }
}

struct Lines {
  std::vector<std::pair<int, std::vector<std::string>>> rows;

  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      auto toks = tokenize(line);
      if (!toks.empty()) rows.emplace_back(no, std::move(toks));
    }
  }
};

}  // namespace

IndexSystem parse_index_system(const std::string& text) {
  const Lines lines(text);
  std::vector<std::string> atoms;
  std::map<std::string, int> id;
  std::vector<std::vector<int>> blocks;
  std::vector<int> in_block;
  std::vector<int> order;
  std::vector<int> order_line;
  std::vector<std::array<int, 3>> entries;
  std::vector<std::pair<std::array<int, 2>, int>> entry_lines;
  int atoms_line = -1;

  auto lookup = [&](const std::string& tok, int no) {
    auto it = id.find(tok);
    if (it == id.end())
      throw ParseError(no, fmt::format("unknown atom label '{}'", tok));
    return it->second;
  };

  for (const auto& [no, toks] : lines.rows) {
    if (toks[0] == "atoms:") {
      if (atoms_line != -1)
        throw ParseError(no, "duplicate atoms: directive");
      atoms_line = no;
      if (toks.size() < 2) throw ParseError(no, "atoms: needs labels");
      for (std::size_t k = 1; k < toks.size(); ++k) {
        if (id.count(toks[k]))
          throw ParseError(no, fmt::format("duplicate atom '{}'", toks[k]));
        id[toks[k]] = static_cast<int>(atoms.size());
        atoms.push_back(toks[k]);
      }
      in_block.assign(atoms.size(), -1);
      order.assign(atoms.size(), 0);
      order_line.assign(atoms.size(), -1);
    } else if (toks[0] == "block:") {
      if (atoms_line == -1) throw ParseError(no, "block: before atoms:");
      if (toks.size() < 2) throw ParseError(no, "block: needs members");
      std::vector<int> members;
      for (std::size_t k = 1; k < toks.size(); ++k) {
        const int x = lookup(toks[k], no);
        if (in_block[x] != -1)
          throw ParseError(
              no, fmt::format("atom '{}' is already in a block", toks[k]));
        in_block[x] = static_cast<int>(blocks.size());
        members.push_back(x);
      }
      blocks.push_back(std::move(members));
    } else if (toks[0] == "order") {
      if (toks.size() != 3) throw ParseError(no, "order needs <atom> <n>");
      const int x = lookup(toks[1], no);
      if (order_line[x] != -1)
        throw ParseError(no,
                         fmt::format("order of '{}' already given", toks[1]));
      order[x] = parse_positive(toks[2], no);
      order_line[x] = no;
    } else if (toks[0] == "index") {
      if (toks.size() != 4)
        throw ParseError(no, "index needs <atom> <atom> <m>");
      const int x = lookup(toks[1], no);
      const int y = lookup(toks[2], no);
      const int m = parse_positive(toks[3], no);
      for (const auto& [pair, prev] : entry_lines)
        if ((pair[0] == x && pair[1] == y) || (pair[0] == y && pair[1] == x))
          throw ParseError(
              no, fmt::format("index for pair {} {} already given on line {}",
                              toks[1], toks[2], prev));
      entries.push_back({x, y, m});
      entry_lines.push_back({{x, y}, no});
    } else {
      throw ParseError(no, fmt::format("unknown directive '{}'", toks[0]));
    }
  }

  if (atoms_line == -1) throw ParseError(1, "missing atoms: directive");
  for (std::size_t x = 0; x < atoms.size(); ++x) {
    if (in_block[x] == -1)
      throw ParseError(atoms_line,
                       fmt::format("atom '{}' is in no block", atoms[x]));
    if (order_line[x] == -1)
      throw ParseError(atoms_line,
                       fmt::format("missing order for atom '{}'", atoms[x]));
  }
  for (const auto& [pair, no] : entry_lines)
    if (in_block[pair[0]] != in_block[pair[1]])
      throw ParseError(no, fmt::format("index for {} {} crosses blocks",
                                       atoms[pair[0]], atoms[pair[1]]));
  return make_index_system(std::move(atoms), std::move(blocks),
                           std::move(order), std::move(entries));
}

std::string dump_index_system(const IndexSystem& s) {
  std::string out = "atoms:";
  for (const auto& a : s.atoms) out += " " + a;
  out += '\n';
  for (const auto& block : s.blocks) {
    out += "block:";
    for (int x : block) out += " " + s.atoms[x];
    out += '\n';
  }
  for (int x = 0; x < s.size(); ++x)
    out += fmt::format("order {} {}\n", s.atoms[x], s.order[x]);
  for (int x = 0; x < s.size(); ++x) {
    if (s.m(x, x) != s.order[x])
      out += fmt::format("index {} {} {}\n", s.atoms[x], s.atoms[x],
                         s.m(x, x));
    for (int y = x + 1; y < s.size(); ++y)
      if (s.same_block(x, y))
        out += fmt::format("index {} {} {}\n", s.atoms[x], s.atoms[y],
                           s.m(x, y));
  }
  return out;
}

std::string render_diagram(const IndexSystem& s) {
  std::string out;
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    const auto& block = s.blocks[b];
    out += fmt::format("block {}:", b + 1);
    for (int x : block) out += " " + s.atoms[x];
    out += '\n';
    std::size_t label_w = 1, entry_w = 1;
    for (int x : block) {
      label_w = std::max(label_w, s.atoms[x].size());
      for (int y : block)
        entry_w = std::max(entry_w, std::to_string(s.m(x, y)).size());
    }
    for (std::size_t r = 0; r < block.size(); ++r) {
      out += fmt::format("  {:>{}}", s.atoms[block[r]], label_w);
      for (std::size_t c = 0; c <= r; ++c)
        out += fmt::format(" {:>{}}", s.m(block[r], block[c]), entry_w);
      out += '\n';
    }
  }
  return out;
}

AtomStructure parse_atom_structure(const std::string& text) {
  const Lines lines(text);
  std::vector<std::string> atoms;
  std::map<std::string, int> id;
  std::vector<int> identity;
  std::vector<int> conv;
  std::vector<int> conv_line;
  std::vector<std::array<int, 3>> triples;
  std::vector<int> triple_lines;

  auto lookup = [&](const std::string& tok, int no) {
    auto it = id.find(tok);
    if (it == id.end())
      throw ParseError(no, fmt::format("unknown atom label '{}'", tok));
    return it->second;
  };

  for (const auto& [no, toks] : lines.rows) {
    if (toks[0] == "atom") {
      if (toks.size() != 2) throw ParseError(no, "atom needs one label");
      if (id.count(toks[1]))
        throw ParseError(no, fmt::format("duplicate atom '{}'", toks[1]));
      id[toks[1]] = static_cast<int>(atoms.size());
      atoms.push_back(toks[1]);
      conv.push_back(-1);
      conv_line.push_back(-1);
    } else if (toks[0] == "identity") {
      if (toks.size() < 2) throw ParseError(no, "identity needs labels");
      for (std::size_t k = 1; k < toks.size(); ++k)
        identity.push_back(lookup(toks[k], no));
    } else if (toks[0] == "converse") {
      if (toks.size() != 3) throw ParseError(no, "converse needs two labels");
      const int x = lookup(toks[1], no);
      const int y = lookup(toks[2], no);
      for (int z : {x, y})
        if (conv[z] != -1 && conv[z] != (z == x ? y : x))
          throw ParseError(
              no, fmt::format("converse of '{}' already defined on line {}",
                              atoms[z], conv_line[z]));
      conv[x] = y;
      conv[y] = x;
      conv_line[x] = conv_line[y] = no;
    } else if (toks[0] == "compose") {
      if (toks.size() != 4) throw ParseError(no, "compose needs three labels");
      triples.push_back(
          {lookup(toks[1], no), lookup(toks[2], no), lookup(toks[3], no)});
      triple_lines.push_back(no);
    } else {
      throw ParseError(no, fmt::format("unknown directive '{}'", toks[0]));
    }
  }

  if (atoms.empty()) throw ParseError(1, "no atoms declared");
  for (std::size_t x = 0; x < atoms.size(); ++x)
    if (conv[x] == -1)
      throw ParseError(1, fmt::format("missing converse for atom '{}'",
                                      atoms[x]));
  if (identity.empty()) throw ParseError(1, "no identity atoms declared");

  // Eager cycle-law closure: every triple needs its two companions.
  std::vector<std::array<int, 3>> sorted = triples;
  std::sort(sorted.begin(), sorted.end());
  auto present = [&](std::array<int, 3> t) {
    return std::binary_search(sorted.begin(), sorted.end(), t);
  };
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& [x, y, z] = triples[k];
    if (!present({conv[x], z, y}) || !present({z, conv[y], x}))
      throw ParseError(
          triple_lines[k],
          fmt::format("compose {} {} {} lacks a cycle-law companion",
                      atoms[x], atoms[y], atoms[z]));
  }

  try {
    return AtomStructure(std::move(atoms), std::move(identity),
                         std::move(conv), std::move(triples));
  } catch (const DomainError& e) {
    throw ParseError(1, e.what());
  }
}

std::string dump_atom_structure(const AtomStructure& a) {
  std::string out;
  for (int i = 0; i < a.size(); ++i)
    out += fmt::format("atom {}\n", a.name(i));
  out += "identity";
  a.identity_element().for_each(
      [&](int i) { out += " " + a.name(i); });
  out += '\n';

  std::vector<std::pair<std::string, std::string>> conv_pairs;
  for (int i = 0; i < a.size(); ++i) {
    const int j = a.converse(i);
    if (i <= j)
      conv_pairs.emplace_back(std::min(a.name(i), a.name(j)),
                              std::max(a.name(i), a.name(j)));
  }
  std::sort(conv_pairs.begin(), conv_pairs.end());
  for (const auto& [x, y] : conv_pairs)
    out += fmt::format("converse {} {}\n", x, y);

  std::vector<std::array<std::string, 3>> triples;
  for (const auto& [x, y, z] : a.triples())
    triples.push_back({a.name(x), a.name(y), a.name(z)});
  std::sort(triples.begin(), triples.end());
  for (const auto& [x, y, z] : triples)
    out += fmt::format("compose {} {} {}\n", x, y, z);
  return out;
}

std::string dump_relations(const ConcreteRepresentation& r) {
  std::string out;
  for (std::size_t i = 0; i < r.atom_map.size(); ++i) {
    const AtomRelation& ar = r.atom_map[i];
    for (const auto& [u, v] : ar.rel.pairs)
      out += fmt::format("REL {} {} {} : {} {}\n",
                         r.carrier.labels[ar.x], r.carrier.labels[ar.y],
                         ar.alpha, r.carrier.render(u), r.carrier.render(v));
  }
  return out;
}

}  // namespace gralg
