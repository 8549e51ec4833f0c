#include "residua/formation_expr.hpp"

#include <cctype>
#include <vector>

#include "residua/errors.hpp"
#include "residua/formations.hpp"

namespace residua {
namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error("formation expression: " + msg + " at byte " +
                      std::to_string(pos));
  }

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool peek(char c) {
    ws();
    return pos < s.size() && s[pos] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    ws();
    std::size_t a = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (a == pos) fail("expected a name");
    return s.substr(a, pos - a);
  }

  long number() {
    ws();
    std::size_t a = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (a == pos) fail("expected a number");
    long v = 0;
    for (std::size_t i = a; i < pos; ++i) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000000L) fail("number is too large");
    }
    return v;
  }

  // Decimals separated by whitespace or commas, up to the closing paren.
  std::vector<long> prime_list() {
    std::vector<long> out;
    out.push_back(number());
    while (!peek(')')) {
      eat(',');
      out.push_back(number());
    }
    return out;
  }

  ChiefFunction atom(const std::string& name) {
    std::vector<long> params;
    if (eat('(')) {
      params = prime_list();
      expect(')');
    }
    try {
      return builtin(name, params);
    } catch (const input_error& e) {
      fail(e.what());
    }
  }

  ChiefFunction expr() {
    std::string name = ident();
    if (name == "meet" || name == "join") {
      expect('(');
      ChiefFunction a = expr();
      expect(',');
      ChiefFunction b = expr();
      expect(')');
      return name == "meet" ? meet(a, b) : join(a, b);
    }
    if (name == "not") {
      expect('(');
      ChiefFunction a = expr();
      expect(')');
      return complement(a);
    }
    if (name == "quasi") {
      expect('(');
      ChiefFunction a = expr();
      expect(')');
      return quasi(a);
    }
    if (name == "sylw" || name == "sylwk")
      throw capability_error(
          "sylow subnormality classes are not chief factor functions and "
          "cannot nest inside formation expressions");
    return atom(name);
  }
};

}  // namespace

FormationExpr parse_formation(const std::string& text) {
  Parser p{text};
  p.ws();
  std::size_t save = p.pos;
  FormationExpr out;
  std::string first = p.pos < text.size() ? p.ident() : std::string();
  if (first == "sylw" || first == "sylwk") {
    p.expect('(');
    ChiefFunction f = p.expr();
    p.expect(',');
    std::vector<long> primes = p.prime_list();
    p.expect(')');
    out.sylow = std::make_shared<SylowSubnormClass>(
        std::move(f), std::move(primes),
        first == "sylwk" ? SubnormalKind::k : SubnormalKind::plain);
  } else {
    p.pos = save;
    out.fn = p.expr();
  }
  p.ws();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return out;
}

}  // namespace residua
