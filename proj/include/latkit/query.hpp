#pragma once

// Ad-hoc query expressions for `latkit eval`.
//
//   expr := set | family | elem | pred
//   set  := polar(set) | dpolar(set) | ideal(elem) | mstar(set) | { elem (, elem)* } | {}
//         | basis() | rad() | atoms() | specials()
//   family := val(elem) | primes() | minprimes() | ideals() | polars() | values()
//   elem := label | meet(elem, elem) | join(elem, elem)
//   pred := is(class) | consistent() | projectable()
//   class := A | B | B<n> | Bw | C | Cw | D | E | F | Fv | S | Sw | T
//
// A name followed by '(' is a function call; any other name is a label.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latkit/bits.hpp"
#include "latkit/classes.hpp"
#include "latkit/error.hpp"
#include "latkit/ideals.hpp"
#include "latkit/lattice.hpp"
#include "latkit/polars.hpp"

namespace latkit {

struct SetValue {
  Mask members = 0;
  friend bool operator==(const SetValue&, const SetValue&) = default;
};
struct FamilyValue {
  std::vector<Mask> sets;
  friend bool operator==(const FamilyValue&, const FamilyValue&) = default;
};
struct ElemValue {
  Elem element = 0;
  friend bool operator==(const ElemValue&, const ElemValue&) = default;
};

using QueryValue = std::variant<SetValue, FamilyValue, ElemValue, bool>;

namespace query_detail {

enum class Tok { Name, Call, LBrace, RBrace, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

inline bool label_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '{' && c != '}' && c != ',';
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
  };
  while (true) {
    skip();
    if (i == src.size()) break;
    const std::size_t col = i + 1;
    const char c = src[i];
    if (c == '{') {
      out.push_back({Tok::LBrace, "{", col});
      ++i;
    } else if (c == '}') {
      out.push_back({Tok::RBrace, "}", col});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", col});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", col});
      ++i;
    } else if (c == '(') {
      throw ParseError(col, "unexpected '('");
    } else {
      std::size_t j = i;
      while (j < src.size() && label_char(src[j])) ++j;
      std::string name(src.substr(i, j - i));
      i = j;
      skip();
      if (i < src.size() && src[i] == '(') {
        ++i;
        out.push_back({Tok::Call, std::move(name), col});
      } else {
        out.push_back({Tok::Name, std::move(name), col});
      }
    }
  }
  out.push_back({Tok::End, "", src.size() + 1});
  return out;
}

inline std::string_view type_name(const QueryValue& v) {
  switch (v.index()) {
    case 0: return "set";
    case 1: return "family of sets";
    case 2: return "element";
    default: return "predicate";
  }
}

class Evaluator {
 public:
  Evaluator(const FiniteLattice& lattice, std::string_view source) : l_(lattice), toks_(lex(source)) {}

  QueryValue run() {
    auto v = expr();
    if (peek().kind != Tok::End) throw ParseError(peek().column, "unexpected '" + peek().text + "' after expression");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) {
      throw ParseError(peek().column, "expected " + std::string(what) + (peek().kind == Tok::End ? " at end of input" : " before '" + peek().text + "'"));
    }
    ++pos_;
  }

  Mask want_set(const QueryValue& v, std::string_view fn) {
    if (auto* s = std::get_if<SetValue>(&v)) return s->members;
    throw Error(ErrorKind::TypeMismatch, std::string(fn) + " expects a set, got a " + std::string(type_name(v)));
  }

  Elem want_elem(const QueryValue& v, std::string_view fn) {
    if (auto* e = std::get_if<ElemValue>(&v)) return e->element;
    throw Error(ErrorKind::TypeMismatch, std::string(fn) + " expects an element, got a " + std::string(type_name(v)));
  }

  const std::vector<Mask>& ideals() {
    if (!ideals_) ideals_ = ideal_masks(l_);
    return *ideals_;
  }

  const ClassReport& classes() {
    if (!classes_) classes_ = classify(l_);
    return *classes_;
  }

  QueryValue expr() {
    const Token t = take();
    switch (t.kind) {
      case Tok::Name:
        if (auto e = l_.find(t.text)) return ElemValue{*e};
        throw Error(ErrorKind::UnknownElement, "no element labelled '" + t.text + "' (column " + std::to_string(t.column) + ")");
      case Tok::LBrace: {
        Mask m = 0;
        if (peek().kind == Tok::RBrace) {
          take();
          return SetValue{m};
        }
        while (true) {
          m |= bit(want_elem(expr(), "{...}"));
          if (peek().kind == Tok::Comma) {
            take();
            continue;
          }
          expect(Tok::RBrace, "',' or '}'");
          return SetValue{m};
        }
      }
      case Tok::Call: return call(t);
      case Tok::End: throw ParseError(t.column, "unexpected end of input");
      default: throw ParseError(t.column, "unexpected '" + t.text + "'");
    }
  }

  QueryValue call(const Token& t) {
    const std::string& f = t.text;
    auto unary = [&] {
      auto v = expr();
      expect(Tok::RParen, "')'");
      return v;
    };
    auto nullary = [&] { expect(Tok::RParen, "')'"); };

    if (f == "polar") return SetValue{polar(l_, want_set(unary(), f))};
    if (f == "dpolar") return SetValue{double_polar(l_, want_set(unary(), f))};
    if (f == "ideal") return SetValue{l_.down(want_elem(unary(), f))};
    if (f == "mstar") return SetValue{m_star(l_, ideals(), want_set(unary(), f))};
    if (f == "val") return FamilyValue{values(l_, ideals(), want_elem(unary(), f))};
    if (f == "meet" || f == "join") {
      const Elem x = want_elem(expr(), f);
      expect(Tok::Comma, "','");
      const Elem y = want_elem(expr(), f);
      expect(Tok::RParen, "')'");
      return ElemValue{f == "meet" ? l_.meet(x, y) : l_.join(x, y)};
    }
    if (f == "is") {
      const Token name = take();
      if (name.kind != Tok::Name) throw ParseError(name.column, "expected a class name");
      expect(Tok::RParen, "')'");
      return class_member(name);
    }
    nullary();
    if (f == "primes") return FamilyValue{enumerate_primes(l_, ideals())};
    if (f == "minprimes") return FamilyValue{minimal_primes(enumerate_primes(l_, ideals()))};
    if (f == "ideals") return FamilyValue{ideals()};
    if (f == "polars") return FamilyValue{enumerate_polars(l_).polars};
    if (f == "values") return FamilyValue{value_spectrum(l_, ideals()).all_values};
    if (f == "basis") {
      const auto b = find_basis(l_);
      return SetValue{b ? *b : 0};
    }
    if (f == "rad") return SetValue{value_spectrum(l_, ideals()).radical};
    if (f == "atoms") return SetValue{atoms_basics(l_).atoms};
    if (f == "specials") return SetValue{value_spectrum(l_, ideals()).specials};
    if (f == "consistent") return is_consistent(l_).consistent;
    if (f == "projectable") return is_projectable(l_).projectable;
    throw ParseError(t.column, "unknown function '" + f + "'");
  }

  bool class_member(const Token& name) {
    const std::string& c = name.text;
    const auto& r = classes();
    if (c == "A") return r.a;
    if (c == "B") return r.in_bn(1);
    if (c == "Bw") return r.b_omega;
    if (c == "C") return r.c.member;
    if (c == "Cw") return r.c_omega.member;
    if (c == "D") return r.d.member;
    if (c == "E") return r.e.member;
    if (c == "F") return r.f.member;
    if (c == "Fv") return r.f_v.member;
    if (c == "S") return r.s.member;
    if (c == "Sw") return r.s_omega.member;
    if (c == "T") return r.t;
    if (c.size() > 1 && c[0] == 'B' && c.size() <= 19 &&
        std::all_of(c.begin() + 1, c.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      return r.in_bn(std::stoull(c.substr(1)));
    }
    throw ParseError(name.column, "unknown class '" + c + "'");
  }

  const FiniteLattice& l_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::optional<std::vector<Mask>> ideals_;
  std::optional<ClassReport> classes_;
};

}  // namespace query_detail

inline QueryValue evaluate(const FiniteLattice& lattice, std::string_view expression) {
  return query_detail::Evaluator(lattice, expression).run();
}

/// Sets print as label lists, families one set per line, predicates as
/// true/false.
inline std::string format_value(const FiniteLattice& lattice, const QueryValue& value) {
  struct Visitor {
    const FiniteLattice& l;
    std::string operator()(const SetValue& s) const { return format_set(l, s.members) + "\n"; }
    std::string operator()(const FamilyValue& f) const {
      if (f.sets.empty()) return "(none)\n";
      std::string out;
      for (Mask m : f.sets) out += format_set(l, m) + "\n";
      return out;
    }
    std::string operator()(const ElemValue& e) const { return l.label(e.element) + "\n"; }
    std::string operator()(bool b) const { return b ? "true\n" : "false\n"; }
  };
  return std::visit(Visitor{lattice}, value);
}

}  // namespace latkit
