#include "ostr/term.hpp"

#include <algorithm>

#include "ostr/error.hpp"

namespace ostr {

PatternTerm PatternTerm::variable(std::string var, Sort var_sort) {
  PatternTerm p;
  p.kind = Kind::variable;
  p.name = std::move(var);
  p.sort = std::move(var_sort);
  return p;
}

PatternTerm PatternTerm::node(std::string ctor, std::vector<PatternTerm> children) {
  PatternTerm p;
  p.kind = Kind::node;
  p.name = std::move(ctor);
  p.args = std::move(children);
  return p;
}

PatternTerm to_pattern(const GroundTerm& t) {
  std::vector<PatternTerm> children;
  children.reserve(t.args.size());
  for (const auto& a : t.args) children.push_back(to_pattern(a));
  return PatternTerm::node(t.constructor, std::move(children));
}

bool is_ground(const PatternTerm& p) {
  if (p.is_variable()) return false;
  return std::all_of(p.args.begin(), p.args.end(), [](const PatternTerm& a) { return is_ground(a); });
}

GroundTerm to_ground(const PatternTerm& p) {
  if (p.is_variable()) {
    throw Error(ErrorCode::unbound_variable, "pattern contains variable " + p.name);
  }
  std::vector<GroundTerm> children;
  children.reserve(p.args.size());
  for (const auto& a : p.args) children.push_back(to_ground(a));
  return GroundTerm(p.name, std::move(children));
}

std::size_t height(const GroundTerm& t) {
  std::size_t h = 0;
  for (const auto& a : t.args) h = std::max(h, height(a) + 1);
  return h;
}

std::size_t height(const PatternTerm& p) {
  std::size_t h = 0;
  for (const auto& a : p.args) h = std::max(h, height(a) + 1);
  return h;
}

std::size_t node_count(const GroundTerm& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += node_count(a);
  return n;
}

static void collect_positions(const GroundTerm& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    cur.push_back(i);
    collect_positions(t.args[i], cur, out);
    cur.pop_back();
  }
}

std::vector<Position> positions(const GroundTerm& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

const GroundTerm& subterm_at(const GroundTerm& t, const Position& pos) {
  const GroundTerm* cur = &t;
  for (std::size_t idx : pos) {
    if (idx >= cur->args.size()) throw std::out_of_range("position " + to_string(pos) + " outside term");
    cur = &cur->args[idx];
  }
  return *cur;
}

static GroundTerm replace_rec(const GroundTerm& t, const Position& pos, std::size_t depth, GroundTerm& repl) {
  if (depth == pos.size()) return std::move(repl);
  if (pos[depth] >= t.args.size()) throw std::out_of_range("position " + to_string(pos) + " outside term");
  GroundTerm out(t.constructor);
  out.args.reserve(t.args.size());
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i == pos[depth]) {
      out.args.push_back(replace_rec(t.args[i], pos, depth + 1, repl));
    } else {
      out.args.push_back(t.args[i]);
    }
  }
  return out;
}

GroundTerm replace_at(const GroundTerm& t, const Position& pos, GroundTerm replacement) {
  return replace_rec(t, pos, 0, replacement);
}

static void print(const GroundTerm& t, std::string& out) {
  out += t.constructor;
  if (t.args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    print(t.args[i], out);
  }
  out += ')';
}

static void print(const PatternTerm& p, std::string& out) {
  out += p.name;
  if (p.is_variable()) {
    out += ':';
    out += p.sort.name();
    return;
  }
  if (p.args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (i) out += ", ";
    print(p.args[i], out);
  }
  out += ')';
}

std::string to_string(const GroundTerm& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const PatternTerm& p) {
  std::string out;
  print(p, out);
  return out;
}

std::string to_string(const Position& pos) {
  if (pos.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(pos[i]);
  }
  return out;
}

}  // namespace ostr

std::size_t std::hash<ostr::GroundTerm>::operator()(const ostr::GroundTerm& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.constructor);
  for (const auto& a : t.args) {
    h ^= (*this)(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
