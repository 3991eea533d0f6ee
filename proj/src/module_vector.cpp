#include "mcmdeg/module_vector.hpp"

#include <cctype>

#include "mcmdeg/errors.hpp"

namespace mcmdeg {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

std::string ClassKey::to_string() const {
  return param ? family + "[" + std::to_string(*param) + "]" : family;
}

ClassKey ClassKey::parse(std::string_view text, const ParamBindings& params) {
  std::string s = trim(text);
  ClassKey key;
  auto open = s.find('[');
  if (open == std::string::npos) {
    key.family = s;
  } else {
    if (s.back() != ']') throw ParseError("bad class name '" + s + "'");
    key.family = trim(s.substr(0, open));
    key.param = parse_int_expr(s.substr(open + 1, s.size() - open - 2), params);
    if (*key.param < 0) throw ParseError("negative family parameter in '" + s + "'");
  }
  if (key.family.empty()) throw ParseError("empty class name");
  for (char c : key.family)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#'))
      throw ParseError("bad class name '" + s + "'");
  return key;
}

ModuleVector ModuleVector::of(const ClassKey& key, long count) {
  ModuleVector v;
  v.add(key, count);
  return v;
}

long ModuleVector::count(const ClassKey& key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

long ModuleVector::size() const {
  long n = 0;
  for (const auto& [k, c] : counts_) n += c;
  return n;
}

void ModuleVector::add(const ClassKey& key, long k) {
  if (k == 0) return;
  long& c = counts_[key];
  c += k;
  if (c < 0) throw Error("negative multiplicity for " + key.to_string());
  if (c == 0) counts_.erase(key);
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  for (const auto& [k, c] : o.counts_) add(k, c);
  return *this;
}

ModuleVector ModuleVector::scaled(long n) const {
  if (n < 0) throw Error("negative scale");
  ModuleVector v;
  if (n == 0) return v;
  for (const auto& [k, c] : counts_) v.counts_[k] = c * n;
  return v;
}

bool ModuleVector::contains(const ModuleVector& o) const {
  for (const auto& [k, c] : o.counts_)
    if (count(k) < c) return false;
  return true;
}

ModuleVector ModuleVector::minus(const ModuleVector& o) const {
  if (!contains(o)) throw Error("cannot remove " + o.to_string() + " from " + to_string());
  ModuleVector v = *this;
  for (const auto& [k, c] : o.counts_) v.add(k, -c);
  return v;
}

std::string ModuleVector::to_string() const {
  if (counts_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : counts_) {
    if (!out.empty()) out += " + ";
    out += k.to_string();
    if (c != 1) out += "^" + std::to_string(c);
  }
  return out;
}

ModuleVector ModuleVector::parse(std::string_view text, const ParamBindings& params) {
  std::string s = trim(text);
  ModuleVector v;
  if (s == "0" || s.empty()) return v;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '[') ++depth;
    if (i < s.size() && s[i] == ']') --depth;
    if (i == s.size() || (s[i] == '+' && depth == 0)) {
      std::string term = trim(std::string_view(s).substr(start, i - start));
      if (term.empty()) throw ParseError("empty summand in '" + s + "'");
      long k = 1;
      auto caret = term.rfind('^');
      if (caret != std::string::npos && term.find(']', caret) == std::string::npos) {
        k = parse_int_expr(term.substr(caret + 1), params);
        term = trim(term.substr(0, caret));
      }
      if (k < 0) throw ParseError("negative multiplicity in '" + s + "'");
      v.add(ClassKey::parse(term, params), k);
      start = i + 1;
    }
  }
  return v;
}

}  // namespace mcmdeg
