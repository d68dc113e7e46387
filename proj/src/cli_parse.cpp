#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "picgrp/cli.hpp"
#include "picgrp/error.hpp"

namespace picgrp::cli {

namespace {

enum class KeyType { integer, coefficient, int_list, matrix, matrices, tree, word, state };

struct KeySpec {
  const char* name;
  KeyType type;
  bool required;
  std::vector<std::string> choices = {};
};

struct CommandSpec {
  Command command;
  const char* name;
  std::vector<KeySpec> keys;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = {
      {Command::aut, "aut",
       {{"p", KeyType::integer, true}, {"P", KeyType::int_list, true},
        {"mode", KeyType::word, false, {"fast", "oracle"}}}},
      {Command::fusion, "fusion",
       {{"p", KeyType::integer, true}, {"P", KeyType::int_list, true}, {"E", KeyType::matrices, false}}},
      {Command::pic_local, "pic-local",
       {{"p", KeyType::integer, true}, {"P", KeyType::int_list, true}, {"E", KeyType::matrices, true},
        {"m", KeyType::coefficient, false}}},
      {Command::pic_frobenius, "pic-frobenius",
       {{"p", KeyType::integer, true}, {"P", KeyType::int_list, true}, {"E", KeyType::matrices, true}}},
      {Command::pic_cyclic, "pic-cyclic",
       {{"p", KeyType::integer, true}, {"P", KeyType::int_list, true}, {"E", KeyType::matrices, true},
        {"d", KeyType::integer, false}}},
      {Command::pic_kleinfour, "pic-kleinfour",
       {{"case", KeyType::word, true, {"A4", "A5_principal", "nilpotent"}}, {"m", KeyType::coefficient, false}}},
      {Command::pic_nilpotent, "pic-nilpotent",
       {{"p", KeyType::integer, true}, {"P", KeyType::int_list, true}, {"m", KeyType::coefficient, false}}},
      {Command::dade, "dade",
       {{"context", KeyType::word, false, {"trivial", "z3_by_c2", "free_rank_one"}},
        {"free_rank", KeyType::integer, false},
        {"torsion", KeyType::int_list, false},
        {"action", KeyType::matrices, false},
        {"v", KeyType::int_list, false},
        {"phi", KeyType::matrix, false},
        {"w", KeyType::int_list, false},
        {"psi", KeyType::matrix, false}}},
      {Command::tree, "tree",
       {{"vertices", KeyType::tree, true}, {"state", KeyType::state, false}, {"n", KeyType::integer, false},
        {"pi", KeyType::int_list, false}}},
      {Command::verify, "verify",
       {{"what", KeyType::word, true, {"frobenius-sequence", "local-diagram"}},
        {"p", KeyType::integer, true},
        {"P", KeyType::int_list, true},
        {"E", KeyType::matrices, true},
        {"m", KeyType::coefficient, false}}},
  };
  return specs;
}

const CommandSpec& spec_of(Command c) {
  for (const auto& s : commands())
    if (s.command == c) return s;
  throw std::logic_error("unknown command");
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Error at_line(std::size_t line, const std::string& kind, const std::string& what) {
  return input_error(kind, "line " + std::to_string(line) + ": " + what);
}

bool parse_int(std::string_view s, std::int64_t& out) {
  const auto t = trim(s);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

// Nested bracketed integer lists.
struct Nested {
  bool leaf = false;
  std::int64_t value = 0;
  std::vector<Nested> items;
};

class NestedParser {
 public:
  explicit NestedParser(std::string_view s) : s_(s) {}

  bool parse(Nested& out) {
    if (!node(out)) return false;
    skip();
    return pos_ == s_.size();
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool node(Nested& out) {
    skip();
    if (pos_ >= s_.size()) return false;
    if (s_[pos_] == '[') {
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        return true;
      }
      for (;;) {
        Nested item;
        if (!node(item)) return false;
        out.items.push_back(std::move(item));
        skip();
        if (pos_ >= s_.size()) return false;
        if (s_[pos_] == ']') {
          ++pos_;
          return true;
        }
        if (s_[pos_] != ',') return false;
        ++pos_;
      }
    }
    std::size_t end = pos_;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '-' || s_[end] == '+'))
      ++end;
    out.leaf = true;
    const bool ok = parse_int(s_.substr(pos_, end - pos_), out.value);
    pos_ = end;
    return ok;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool to_list(const Nested& n, std::vector<std::int64_t>& out) {
  if (n.leaf) return false;
  for (const auto& x : n.items) {
    if (!x.leaf) return false;
    out.push_back(x.value);
  }
  return true;
}

bool to_matrix(const Nested& n, Images& out) {
  if (n.leaf) return false;
  for (const auto& col : n.items) {
    std::vector<std::int64_t> c;
    if (!to_list(col, c)) return false;
    out.push_back(std::move(c));
  }
  return true;
}

bool to_matrices(const Nested& n, std::vector<Images>& out) {
  if (n.leaf) return false;
  for (const auto& m : n.items) {
    Images im;
    if (!to_matrix(m, im)) return false;
    out.push_back(std::move(im));
  }
  return true;
}

bool parse_tree(const std::string& text, TreeSpec& out) {
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto t = trim(part);
    VertexSpec v;
    if (t.rfind("rho", 0) == 0) {
      v.kind = VertexKind::rho;
      t = trim(t.substr(3));
    } else if (t.rfind("sigma", 0) == 0) {
      v.kind = VertexKind::sigma;
      t = trim(t.substr(5));
    }
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') return false;
    std::string inner = t.substr(1, t.size() - 2);
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::stringstream es(inner);
    std::string tok;
    while (es >> tok) {
      std::int64_t e = 0;
      if (!parse_int(tok, e)) return false;
      v.edges.push_back(static_cast<int>(e));
    }
    out.vertices.push_back(std::move(v));
  }
  return !out.vertices.empty();
}

Value parse_value(const KeySpec& key, const std::string& text, std::size_t line) {
  auto type_error = [&](const std::string& expected) {
    return at_line(line, "TypeError", std::string("key '") + key.name + "' expects " + expected);
  };
  switch (key.type) {
    case KeyType::integer: {
      std::int64_t v = 0;
      if (!parse_int(text, v)) throw type_error("an integer");
      return v;
    }
    case KeyType::coefficient: {
      if (text == "inf") return std::string("inf");
      std::int64_t v = 0;
      if (!parse_int(text, v) || v < 0) throw type_error("a nonnegative integer or 'inf'");
      return v;
    }
    case KeyType::int_list:
    case KeyType::matrix:
    case KeyType::matrices: {
      Nested n;
      if (!NestedParser(text).parse(n)) throw type_error("a bracketed integer list");
      if (key.type == KeyType::int_list) {
        std::vector<std::int64_t> v;
        if (!to_list(n, v)) throw type_error("a list of integers such as [1,1]");
        return v;
      }
      if (key.type == KeyType::matrix) {
        Images m;
        if (!to_matrix(n, m)) throw type_error("a matrix given as generator images such as [[0,1],[1,0]]");
        return m;
      }
      std::vector<Images> ms;
      if (!to_matrices(n, ms)) throw type_error("a list of matrices such as [[[0,1],[1,1]]]");
      return ms;
    }
    case KeyType::tree: {
      TreeSpec t;
      if (!parse_tree(text, t)) throw type_error("vertex lists such as (1 2 3); (1); (2); (3)");
      return t;
    }
    case KeyType::word:
      if (std::find(key.choices.begin(), key.choices.end(), text) == key.choices.end()) {
        std::string all;
        for (const auto& c : key.choices) all += (all.empty() ? "" : ", ") + c;
        throw type_error("one of " + all);
      }
      return text;
    case KeyType::state: {
      std::int64_t e = 0;
      if (text.size() < 2 || (text[0] != 'U' && text[0] != 'V') || !parse_int(text.substr(1), e))
        throw type_error("a hook state such as U1 or V2");
      return text;
    }
  }
  throw std::logic_error("unhandled key type");
}

void print_list(std::ostream& o, const std::vector<std::int64_t>& v) {
  o << "[";
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
  o << "]";
}

void print_matrix(std::ostream& o, const Images& m) {
  o << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) o << ",";
    print_list(o, m[i]);
  }
  o << "]";
}

struct ValuePrinter {
  std::ostream& o;
  void operator()(std::int64_t v) const { o << v; }
  void operator()(const std::vector<std::int64_t>& v) const { print_list(o, v); }
  void operator()(const Images& m) const { print_matrix(o, m); }
  void operator()(const std::vector<Images>& ms) const {
    o << "[";
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (i) o << ",";
      print_matrix(o, ms[i]);
    }
    o << "]";
  }
  void operator()(const TreeSpec& t) const {
    for (std::size_t i = 0; i < t.vertices.size(); ++i) {
      const auto& v = t.vertices[i];
      if (i) o << "; ";
      if (v.kind) o << (*v.kind == VertexKind::rho ? "rho" : "sigma");
      o << "(";
      for (std::size_t k = 0; k < v.edges.size(); ++k) o << (k ? " " : "") << v.edges[k];
      o << ")";
    }
  }
  void operator()(const std::string& s) const { o << s; }
};

}  // namespace

std::string command_name(Command c) { return spec_of(c).name; }

std::vector<JobSpec> parse_input(const std::string& text) {
  std::vector<JobSpec> jobs;
  std::vector<std::size_t> header_lines;
  std::stringstream ss(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
      const auto name = trim(std::string_view(t).substr(1, t.size() - 2));
      const CommandSpec* found = nullptr;
      for (const auto& s : commands())
        if (name == s.name) found = &s;
      if (!found) throw at_line(line, "SyntaxError", "unknown command [" + name + "]");
      jobs.push_back(JobSpec{found->command, {}});
      header_lines.push_back(line);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw at_line(line, "SyntaxError", "expected 'key = value' or '[command]'");
    if (jobs.empty()) throw at_line(line, "SyntaxError", "key before any [command] header");
    const auto key = trim(std::string_view(t).substr(0, eq));
    const auto value = trim(std::string_view(t).substr(eq + 1));
    const auto& spec = spec_of(jobs.back().command);
    auto it = std::find_if(spec.keys.begin(), spec.keys.end(), [&](const KeySpec& k) { return key == k.name; });
    if (it == spec.keys.end())
      throw at_line(line, "UnknownKey", "[" + std::string(spec.name) + "] has no key '" + key + "'");
    if (jobs.back().params.count(key)) throw at_line(line, "SyntaxError", "key '" + key + "' given twice");
    if (std::count(value.begin(), value.end(), '[') != std::count(value.begin(), value.end(), ']') ||
        std::count(value.begin(), value.end(), '(') != std::count(value.begin(), value.end(), ')'))
      throw at_line(line, "SyntaxError", "unbalanced brackets in the value of '" + key + "'");
    jobs.back().params.emplace(key, parse_value(*it, value, line));
  }
  if (jobs.empty()) throw input_error("SyntaxError", "line 0: no [command] section");
  for (std::size_t j = 0; j < jobs.size(); ++j)
    for (const auto& k : spec_of(jobs[j].command).keys)
      if (k.required && !jobs[j].params.count(k.name))
        throw at_line(header_lines[j], "MissingKey",
                      "[" + command_name(jobs[j].command) + "] requires key '" + k.name + "'");
  return jobs;
}

std::string print_job(const JobSpec& job) {
  std::ostringstream o;
  const auto& spec = spec_of(job.command);
  o << "[" << spec.name << "]\n";
  for (const auto& k : spec.keys) {
    auto it = job.params.find(k.name);
    if (it == job.params.end()) continue;
    o << k.name << " = ";
    std::visit(ValuePrinter{o}, it->second);
    o << "\n";
  }
  return o.str();
}

}  // namespace picgrp::cli
