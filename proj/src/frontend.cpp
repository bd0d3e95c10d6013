#include "ffmcsat/frontend.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <variant>

namespace ffmcsat {

std::string SrcLoc::to_string() const {
  return "line " + std::to_string(line) + " column " + std::to_string(col);
}

namespace {

[[noreturn]] void fail(Errc code, const SrcLoc& loc, const std::string& msg) {
  throw Error(code, loc.to_string() + ": " + msg);
}

bool symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  return std::string("~!@$%^&*_-+=<>.?/").find(c) != std::string::npos;
}

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') ++line, col = 1;
    else ++col;
  };
  while (i < text.size()) {
    char c = text[i];
    SrcLoc loc{line, col};
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') advance(text[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c), ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({Token::Kind::LParen, "(", loc});
      advance(c), ++i;
      continue;
    }
    if (c == ')') {
      out.push_back({Token::Kind::RParen, ")", loc});
      advance(c), ++i;
      continue;
    }
    if (c == '|') {
      std::string s;
      advance(c), ++i;
      while (i < text.size() && text[i] != '|') s += text[i], advance(text[i++]);
      if (i >= text.size()) fail(Errc::LexError, loc, "unterminated |symbol|");
      advance(text[i++]);
      out.push_back({Token::Kind::Symbol, s, loc});
      continue;
    }
    if (c == '"') {
      std::string s;
      advance(c), ++i;
      while (i < text.size()) {
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {  // escaped quote
            s += '"';
            advance(text[i++]), advance(text[i++]);
            continue;
          }
          break;
        }
        s += text[i], advance(text[i++]);
      }
      if (i >= text.size()) fail(Errc::LexError, loc, "unterminated string");
      advance(text[i++]);
      out.push_back({Token::Kind::String, s, loc});
      continue;
    }
    if (c == ':') {
      std::string s(1, c);
      advance(c), ++i;
      while (i < text.size() && symbol_char(text[i])) s += text[i], advance(text[i++]);
      out.push_back({Token::Kind::Keyword, s, loc});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      bool decimal = false;
      while (i < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
        if (text[i] == '.') decimal = true;
        s += text[i], advance(text[i++]);
      }
      out.push_back({decimal ? Token::Kind::Decimal : Token::Kind::Numeral, s, loc});
      continue;
    }
    if (symbol_char(c)) {
      std::string s;
      while (i < text.size() && symbol_char(text[i])) s += text[i], advance(text[i++]);
      out.push_back({Token::Kind::Symbol, s, loc});
      continue;
    }
    fail(Errc::LexError, loc, std::string("illegal character '") + c + "'");
  }
  return out;
}

namespace {

SExpr parse_sexpr(const std::vector<Token>& ts, size_t& i) {
  if (i >= ts.size())
    throw Error(Errc::ParseError, "unexpected end of input");
  const Token& t = ts[i];
  if (t.kind == Token::Kind::RParen)
    fail(Errc::ParseError, t.loc, "unexpected ')'");
  if (t.kind != Token::Kind::LParen) {
    ++i;
    return SExpr{true, t, {}, t.loc};
  }
  SExpr e{false, t, {}, t.loc};
  ++i;
  while (i < ts.size() && ts[i].kind != Token::Kind::RParen)
    e.children.push_back(parse_sexpr(ts, i));
  if (i >= ts.size()) fail(Errc::ParseError, t.loc, "unbalanced '('");
  ++i;  // consume ')'
  return e;
}

bool is_symbol(const SExpr& e, const char* s) {
  return e.is_atom && e.token.kind == Token::Kind::Symbol && e.token.text == s;
}

std::string symbol_of(const SExpr& e, const char* what) {
  if (!e.is_atom || e.token.kind != Token::Kind::Symbol)
    fail(Errc::ParseError, e.loc, std::string("expected ") + what);
  return e.token.text;
}

mpz_class numeral_of(const SExpr& e) {
  if (!e.is_atom || e.token.kind != Token::Kind::Numeral)
    fail(Errc::ParseError, e.loc, "expected numeral");
  return mpz_class(e.token.text);
}

// Sort syntax: Bool | (_ FiniteField N) | alias.
Sort resolve_sort(const SExpr& e, const std::map<std::string, Sort>& aliases) {
  if (e.is_atom) {
    std::string name = symbol_of(e, "sort");
    if (name == "Bool") return Sort{true, 0};
    auto it = aliases.find(name);
    if (it != aliases.end()) return it->second;
    fail(Errc::ParseError, e.loc, "unknown sort '" + name + "'");
  }
  if (e.children.size() == 3 && is_symbol(e.children[0], "_") &&
      is_symbol(e.children[1], "FiniteField"))
    return Sort{false, numeral_of(e.children[2])};
  fail(Errc::ParseError, e.loc, "malformed sort");
}

}  // namespace

std::vector<Command> parse_commands(const std::vector<Token>& tokens) {
  std::vector<Command> out;
  std::map<std::string, Sort> sort_aliases;
  size_t i = 0;
  while (i < tokens.size()) {
    SExpr e = parse_sexpr(tokens, i);
    if (e.is_atom) fail(Errc::ParseError, e.loc, "expected a command list");
    if (e.children.empty()) fail(Errc::ParseError, e.loc, "empty command");
    std::string head = symbol_of(e.children[0], "command name");
    auto arity = [&](size_t n, const char* shape) {
      if (e.children.size() != n + 1) fail(Errc::ParseError, e.loc, shape);
    };
    if (head == "set-logic") {
      arity(1, "(set-logic <symbol>)");
      std::string logic = symbol_of(e.children[1], "logic name");
      if (logic != "QF_FF" && logic != "QF_FFA")
        fail(Errc::UnsupportedFeature, e.loc, "unsupported logic " + logic);
      out.push_back({Command::Kind::SetLogic, logic, {}, {}, e.loc});
    } else if (head == "define-sort") {
      arity(3, "(define-sort <name> () <sort>)");
      std::string name = symbol_of(e.children[1], "sort name");
      if (e.children[2].is_atom || !e.children[2].children.empty())
        fail(Errc::UnsupportedFeature, e.loc, "parameterized define-sort");
      Sort s = resolve_sort(e.children[3], sort_aliases);
      if (!sort_aliases.emplace(name, s).second)
        fail(Errc::ParseError, e.loc, "sort '" + name + "' redefined");
      out.push_back({Command::Kind::DefineSort, name, s, {}, e.loc});
    } else if (head == "declare-fun" || head == "declare-const") {
      std::string name;
      Sort s;
      if (head == "declare-fun") {
        arity(3, "(declare-fun <name> () <sort>)");
        name = symbol_of(e.children[1], "function name");
        if (e.children[2].is_atom || !e.children[2].children.empty())
          fail(Errc::UnsupportedFeature, e.loc,
               "only zero-arity declarations are supported");
        s = resolve_sort(e.children[3], sort_aliases);
      } else {
        arity(2, "(declare-const <name> <sort>)");
        name = symbol_of(e.children[1], "constant name");
        s = resolve_sort(e.children[2], sort_aliases);
      }
      out.push_back({Command::Kind::DeclareFun, name, s, {}, e.loc});
    } else if (head == "assert") {
      arity(1, "(assert <term>)");
      out.push_back({Command::Kind::Assert, "", {}, e.children[1], e.loc});
    } else if (head == "check-sat") {
      out.push_back({Command::Kind::CheckSat, "", {}, {}, e.loc});
    } else if (head == "get-model") {
      out.push_back({Command::Kind::GetModel, "", {}, {}, e.loc});
    } else if (head == "exit") {
      out.push_back({Command::Kind::Exit, "", {}, {}, e.loc});
    } else if (head == "set-info" || head == "set-option" || head == "get-info") {
      out.push_back({Command::Kind::Ignored, head, {}, {}, e.loc});
    } else {
      fail(Errc::UnsupportedFeature, e.loc, "unsupported command " + head);
    }
    // sort aliases double as term-level FF sort names via (as ffN <alias>),
    // so Assert commands capture the alias map by re-resolution in elaborate.
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elaboration: sorts, typed terms, constant propagation, clausification.

namespace {

struct ElabCtx {
  std::optional<Field> field;
  std::map<std::string, Sort> sort_aliases;
  std::map<std::string, VarId> ff_vars;
  std::map<std::string, AtomId> bool_vars;
  Problem* problem = nullptr;
  int aux_counter = 0;
  bool empty_clause = false;

  Field& the_field(const mpz_class& order, const SrcLoc& loc) {
    if (!field) {
      field = Field::make(order);  // throws NonPrimeOrder
    } else if (field->order() != order) {
      fail(Errc::MixedFields, loc,
           "field order " + order.get_str() + " conflicts with F_" +
               field->order().get_str());
    }
    return *field;
  }
};

// Typed elaboration result: either an FF polynomial (constants folded by
// polynomial arithmetic) or a Boolean term.
struct TypedTerm {
  bool is_ff;
  std::optional<Polynomial> poly;
  TermPtr boolean;  // normalized: And/Or/Not/Eq(ff atoms)/BoolVar/BoolConst
};

// Parses the ffN spelling (possibly negative) of an indexed constant.
std::optional<mpz_class> ff_constant_value(const std::string& s) {
  if (s.size() < 3 || s.rfind("ff", 0) != 0) return std::nullopt;
  size_t start = 2;
  bool neg = false;
  if (s[start] == '-') neg = true, ++start;
  if (start >= s.size()) return std::nullopt;
  for (size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  mpz_class v(s.substr(start));
  return neg ? mpz_class(-v) : v;
}

// The term of an aux definition (used by the oracle to complete models) is
// rebuilt from already-typed pieces, so Boolean arguments are Terms and FF
// equalities keep their polynomial inside an Eq over a synthetic pair.
TermPtr poly_term(const Polynomial& p) {
  // Encode the polynomial itself; Eq(poly-term, 0) evaluates by evaluating p.
  std::vector<TermPtr> monos;
  for (const Monomial& m : p.monomials()) {
    std::vector<TermPtr> factors;
    factors.push_back(Term::ff_const(m.coeff));
    for (auto& [v, e] : m.exps)
      for (unsigned k = 0; k < e; ++k) factors.push_back(Term::ff_var(v));
    monos.push_back(factors.size() == 1
                        ? factors[0]
                        : Term::apply(Term::Kind::FFMul, std::move(factors)));
  }
  if (monos.empty()) return Term::ff_const(p.field().zero());
  if (monos.size() == 1) return monos[0];
  return Term::apply(Term::Kind::FFAdd, std::move(monos));
}

TermPtr eq_zero_term(const Polynomial& p) {
  return Term::apply(Term::Kind::Eq,
                     {poly_term(p), Term::ff_const(p.field().zero())});
}

struct LetEnv {
  std::map<std::string, TypedTerm> bindings;
  const LetEnv* parent = nullptr;
  const TypedTerm* lookup(const std::string& name) const {
    auto it = bindings.find(name);
    if (it != bindings.end()) return &it->second;
    return parent ? parent->lookup(name) : nullptr;
  }
};

TypedTerm elab_term(ElabCtx& cx, const SExpr& e, const LetEnv* env);

Polynomial expect_ff(ElabCtx& cx, const SExpr& e, const LetEnv* env) {
  TypedTerm t = elab_term(cx, e, env);
  if (!t.is_ff) fail(Errc::SortError, e.loc, "expected a finite-field term");
  return *t.poly;
}

TermPtr expect_bool(ElabCtx& cx, const SExpr& e, const LetEnv* env) {
  TypedTerm t = elab_term(cx, e, env);
  if (t.is_ff) fail(Errc::SortError, e.loc, "expected a Boolean term");
  return t.boolean;
}

TypedTerm ff_result(Polynomial p) {
  return TypedTerm{true, std::move(p), nullptr};
}

TypedTerm bool_result(TermPtr t) { return TypedTerm{false, std::nullopt, t}; }

TypedTerm elab_term(ElabCtx& cx, const SExpr& e, const LetEnv* env) {
  if (e.is_atom) {
    const Token& t = e.token;
    if (t.kind == Token::Kind::Symbol) {
      if (const TypedTerm* bound = env ? env->lookup(t.text) : nullptr)
        return *bound;
      if (t.text == "true") return bool_result(Term::bool_const(true));
      if (t.text == "false") return bool_result(Term::bool_const(false));
      auto fv = cx.ff_vars.find(t.text);
      if (fv != cx.ff_vars.end())
        return ff_result(Polynomial::variable(*cx.field, fv->second));
      auto bv = cx.bool_vars.find(t.text);
      if (bv != cx.bool_vars.end())
        return bool_result(Term::bool_var(bv->second));
      fail(Errc::SortError, e.loc, "unknown constant '" + t.text + "'");
    }
    fail(Errc::ParseError, e.loc, "unexpected token in term");
  }
  if (e.children.empty()) fail(Errc::ParseError, e.loc, "empty term");
  // (_ ffN p) indexed constant
  if (e.children.size() == 3 && is_symbol(e.children[0], "_")) {
    std::string sym = symbol_of(e.children[1], "indexed symbol");
    auto val = ff_constant_value(sym);
    if (!val) fail(Errc::UnsupportedFeature, e.loc, "unsupported indexed term " + sym);
    Field& f = cx.the_field(numeral_of(e.children[2]), e.loc);
    return ff_result(Polynomial::constant(f.element(*val)));
  }
  // (as ffN S)
  if (e.children.size() == 3 && is_symbol(e.children[0], "as")) {
    std::string sym = symbol_of(e.children[1], "constant under as");
    auto val = ff_constant_value(sym);
    if (!val) fail(Errc::UnsupportedFeature, e.loc, "unsupported as-term " + sym);
    Sort s = resolve_sort(e.children[2], cx.sort_aliases);
    if (s.is_bool) fail(Errc::SortError, e.loc, "ff constant with Bool sort");
    Field& f = cx.the_field(s.ff_order, e.loc);
    return ff_result(Polynomial::constant(f.element(*val)));
  }
  std::string head = symbol_of(e.children[0], "operator");
  size_t n = e.children.size() - 1;
  auto need = [&](bool ok, const char* msg) {
    if (!ok) fail(Errc::ParseError, e.loc, msg);
  };
  if (head == "ff.add" || head == "ff.mul" || head == "ff.sub") {
    need(n >= 1, "ff operation needs arguments");
    Polynomial acc = expect_ff(cx, e.children[1], env);
    for (size_t i = 2; i <= n; ++i) {
      Polynomial arg = expect_ff(cx, e.children[i], env);
      if (head == "ff.add") acc = acc + arg;
      else if (head == "ff.mul") acc = acc * arg;
      else acc = acc - arg;
    }
    return ff_result(std::move(acc));
  }
  if (head == "ff.neg") {
    need(n == 1, "(ff.neg <term>)");
    return ff_result(-expect_ff(cx, e.children[1], env));
  }
  if (head == "=") {
    need(n >= 2, "(= <term> <term> ...)");
    TypedTerm first = elab_term(cx, e.children[1], env);
    std::vector<TermPtr> conj;
    TypedTerm prev = first;
    for (size_t i = 2; i <= n; ++i) {
      TypedTerm cur = elab_term(cx, e.children[i], env);
      if (cur.is_ff != prev.is_ff)
        fail(Errc::SortError, e.children[i].loc, "mixed sorts under =");
      if (cur.is_ff) {
        conj.push_back(eq_zero_term(*prev.poly - *cur.poly));
      } else {
        conj.push_back(Term::apply(Term::Kind::Eq, {prev.boolean, cur.boolean}));
      }
      prev = cur;
    }
    if (conj.size() == 1) return bool_result(conj[0]);
    return bool_result(Term::apply(Term::Kind::And, std::move(conj)));
  }
  if (head == "not") {
    need(n == 1, "(not <term>)");
    return bool_result(Term::apply(Term::Kind::Not,
                                   {expect_bool(cx, e.children[1], env)}));
  }
  if (head == "and" || head == "or" || head == "xor" || head == "=>") {
    need(n >= 1, "connective needs arguments");
    std::vector<TermPtr> args;
    for (size_t i = 1; i <= n; ++i) args.push_back(expect_bool(cx, e.children[i], env));
    Term::Kind k = head == "and"  ? Term::Kind::And
                   : head == "or" ? Term::Kind::Or
                   : head == "xor" ? Term::Kind::Xor
                                   : Term::Kind::Implies;
    if (args.size() == 1 && (k == Term::Kind::And || k == Term::Kind::Or))
      return bool_result(args[0]);
    return bool_result(Term::apply(k, std::move(args)));
  }
  if (head == "let") {
    need(n == 2, "(let ((<name> <term>) ...) <body>)");
    const SExpr& binds = e.children[1];
    if (binds.is_atom) fail(Errc::ParseError, binds.loc, "malformed let bindings");
    LetEnv local;
    local.parent = env;
    for (const SExpr& b : binds.children) {
      if (b.is_atom || b.children.size() != 2)
        fail(Errc::ParseError, b.loc, "malformed let binding");
      std::string name = symbol_of(b.children[0], "let name");
      // SMT-LIB let is parallel: bindings see the outer environment.
      local.bindings.emplace(name, elab_term(cx, b.children[1], env));
    }
    return elab_term(cx, e.children[2], &local);
  }
  if (head == "ite" || head == "distinct" || head == "forall" || head == "exists")
    fail(Errc::UnsupportedFeature, e.loc, head + " is not supported");
  fail(Errc::UnsupportedFeature, e.loc, "unsupported operator " + head);
}

// ---------------------------------------------------------------------------
// Clausification. Terms are reduced to literals bottom-up; non-literal
// subformulas get Tseitin variables defined by biconditional clauses.

struct MaybeLit {
  std::optional<bool> constant;
  Literal lit;
  static MaybeLit of(bool b) { return {b, {}}; }
  static MaybeLit of(Literal l) { return {std::nullopt, l}; }
};

class Clausifier {
 public:
  explicit Clausifier(ElabCtx& cx) : cx_(cx) {}

  void assert_term(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::And:
        for (const TermPtr& a : t->args) assert_term(a);
        return;
      case Term::Kind::Or: {
        std::vector<TermPtr> flat;
        flatten_or(t, flat);
        std::vector<Literal> lits;
        for (const TermPtr& a : flat) {
          MaybeLit l = lit_of(a);
          if (l.constant.has_value()) {
            if (*l.constant) return;  // trivially true clause
            continue;                 // false literal dropped
          }
          lits.push_back(l.lit);
        }
        add_clause(std::move(lits));
        return;
      }
      default: {
        MaybeLit l = lit_of(t);
        if (l.constant.has_value()) {
          if (!*l.constant) cx_.empty_clause = true;
          return;
        }
        add_clause({l.lit});
        return;
      }
    }
  }

 private:
  void flatten_or(const TermPtr& t, std::vector<TermPtr>& out) {
    if (t->kind == Term::Kind::Or) {
      for (const TermPtr& a : t->args) flatten_or(a, out);
    } else {
      out.push_back(t);
    }
  }

  void add_clause(std::vector<Literal> lits) {
    if (lits.empty()) {
      cx_.empty_clause = true;
      return;
    }
    auto c = Clause::make(std::move(lits), ClauseOrigin::Input);
    if (c) cx_.problem->clauses.push_back(std::move(*c));
  }

  MaybeLit lit_of(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::BoolConst:
        return MaybeLit::of(t->bool_value);
      case Term::Kind::BoolVar:
        return MaybeLit::of(Literal::pos(t->bool_atom));
      case Term::Kind::Eq: {
        // FF equality arrives as Eq(poly-term, 0) from elaboration; Boolean
        // equality is a biconditional.
        if (t->args.size() == 2 && is_ff_term(t->args[0]))
          return poly_eq_lit(t);
        return iff_lit(t);
      }
      case Term::Kind::Not: {
        MaybeLit inner = lit_of(t->args[0]);
        if (inner.constant.has_value()) return MaybeLit::of(!*inner.constant);
        return MaybeLit::of(~inner.lit);
      }
      case Term::Kind::Implies: {
        // (=> a b c) == (or (not a) (not b) c)
        std::vector<TermPtr> ors;
        for (size_t i = 0; i + 1 < t->args.size(); ++i)
          ors.push_back(Term::apply(Term::Kind::Not, {t->args[i]}));
        ors.push_back(t->args.back());
        return lit_of(Term::apply(Term::Kind::Or, std::move(ors)));
      }
      case Term::Kind::And:
      case Term::Kind::Or:
        return gate_lit(t);
      case Term::Kind::Xor:
        return xor_lit(t);
      default:
        throw InternalError("FF term in Boolean position");
    }
  }

  static bool is_ff_term(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::FFConst:
      case Term::Kind::FFVar:
      case Term::Kind::FFAdd:
      case Term::Kind::FFMul:
        return true;
      default:
        return false;
    }
  }

  MaybeLit poly_eq_lit(const TermPtr& t) {
    Polynomial p = term_poly(t->args[0]) - term_poly(t->args[1]);
    if (p.is_constant()) return MaybeLit::of(p.constant_value().is_zero());
    // Atoms are canonicalized monic so f = 0 and c*f = 0 share one atom.
    FieldElement lc = p.monomials().front().coeff;
    if (lc.value() != 1) p = p * Polynomial::constant(lc.inverse());
    return MaybeLit::of(Literal::pos(cx_.problem->add_poly_atom(p)));
  }

  Polynomial term_poly(const TermPtr& t) {
    const Field& f = *cx_.field;
    switch (t->kind) {
      case Term::Kind::FFConst:
        return Polynomial::constant(*t->ff_value);
      case Term::Kind::FFVar:
        return Polynomial::variable(f, t->var);
      case Term::Kind::FFAdd: {
        Polynomial acc = Polynomial::zero(f);
        for (const TermPtr& a : t->args) acc = acc + term_poly(a);
        return acc;
      }
      case Term::Kind::FFMul: {
        Polynomial acc = Polynomial::constant(f.one());
        for (const TermPtr& a : t->args) acc = acc * term_poly(a);
        return acc;
      }
      default:
        throw InternalError("Boolean term in FF position");
    }
  }

  // Tseitin gate for and/or after constant folding.
  MaybeLit gate_lit(const TermPtr& t) {
    bool is_and = t->kind == Term::Kind::And;
    std::vector<Literal> lits;
    for (const TermPtr& a : t->args) {
      MaybeLit l = lit_of(a);
      if (l.constant.has_value()) {
        if (*l.constant != is_and) return MaybeLit::of(!is_and);
        continue;  // neutral element dropped
      }
      lits.push_back(l.lit);
    }
    if (lits.empty()) return MaybeLit::of(is_and);
    if (lits.size() == 1) return MaybeLit::of(lits[0]);
    Literal a = fresh_aux(t);
    if (is_and) {
      std::vector<Literal> big{a};
      for (Literal l : lits) {
        add_clause({~a, l});
        big.push_back(~l);
      }
      add_clause(std::move(big));
    } else {
      std::vector<Literal> big{~a};
      for (Literal l : lits) {
        add_clause({a, ~l});
        big.push_back(l);
      }
      add_clause(std::move(big));
    }
    return MaybeLit::of(a);
  }

  MaybeLit iff_lit(const TermPtr& t) {
    MaybeLit x = lit_of(t->args[0]);
    MaybeLit y = lit_of(t->args[1]);
    if (x.constant.has_value() && y.constant.has_value())
      return MaybeLit::of(*x.constant == *y.constant);
    if (x.constant.has_value())
      return *x.constant ? y : MaybeLit::of(~y.lit);
    if (y.constant.has_value())
      return *y.constant ? x : MaybeLit::of(~x.lit);
    if (x.lit == y.lit) return MaybeLit::of(true);
    if (x.lit == ~y.lit) return MaybeLit::of(false);
    Literal a = fresh_aux(t);
    add_clause({~a, x.lit, ~y.lit});
    add_clause({~a, ~x.lit, y.lit});
    add_clause({a, x.lit, y.lit});
    add_clause({a, ~x.lit, ~y.lit});
    return MaybeLit::of(a);
  }

  MaybeLit xor_lit(const TermPtr& t) {
    // Fold n-ary xor pairwise; xor(x, y) == not(iff(x, y)). The running
    // definition term tracks the whole prefix so aux model completion stays
    // faithful.
    MaybeLit acc = lit_of(t->args[0]);
    TermPtr acc_term = t->args[0];
    for (size_t i = 1; i < t->args.size(); ++i) {
      TermPtr rhs_term = t->args[i];
      MaybeLit rhs = lit_of(rhs_term);
      TermPtr next_term =
          Term::apply(Term::Kind::Xor, {acc_term, rhs_term});
      if (acc.constant.has_value() && rhs.constant.has_value()) {
        acc = MaybeLit::of(*acc.constant != *rhs.constant);
      } else if (acc.constant.has_value()) {
        acc = *acc.constant ? MaybeLit::of(~rhs.lit) : rhs;
      } else if (rhs.constant.has_value()) {
        acc = *rhs.constant ? MaybeLit::of(~acc.lit) : acc;
      } else if (acc.lit == rhs.lit) {
        acc = MaybeLit::of(false);
      } else if (acc.lit == ~rhs.lit) {
        acc = MaybeLit::of(true);
      } else {
        Literal a = fresh_aux(next_term);
        add_clause({~a, acc.lit, rhs.lit});
        add_clause({~a, ~acc.lit, ~rhs.lit});
        add_clause({a, acc.lit, ~rhs.lit});
        add_clause({a, ~acc.lit, rhs.lit});
        acc = MaybeLit::of(a);
      }
      acc_term = next_term;
    }
    return acc;
  }

  Literal fresh_aux(const TermPtr& definition) {
    std::string name = "aux!" + std::to_string(cx_.aux_counter++);
    AtomId id = cx_.problem->add_bool_atom(name, true, definition);
    return Literal::pos(id);
  }

  ElabCtx& cx_;
};

void scan_for_order(const SExpr& e, const std::map<std::string, Sort>& aliases,
                    std::optional<mpz_class>& out) {
  if (out || e.is_atom) return;
  if (e.children.size() == 3 && is_symbol(e.children[0], "_") &&
      e.children[1].is_atom &&
      e.children[1].token.kind == Token::Kind::Symbol &&
      ff_constant_value(e.children[1].token.text) &&
      e.children[2].is_atom &&
      e.children[2].token.kind == Token::Kind::Numeral) {
    out = numeral_of(e.children[2]);
    return;
  }
  if (e.children.size() == 3 && is_symbol(e.children[0], "as")) {
    try {
      Sort s = resolve_sort(e.children[2], aliases);
      if (!s.is_bool) {
        out = s.ff_order;
        return;
      }
    } catch (const Error&) {
      // leave the error for the proper elaboration walk
    }
  }
  for (const SExpr& c : e.children) scan_for_order(c, aliases, out);
}

// The field sort "in use" is the first one appearing in a declaration or
// inside an assertion; a defined-but-unused alias of another order is inert.
std::optional<mpz_class> discover_order(const std::vector<Command>& commands) {
  std::map<std::string, Sort> aliases;
  for (const Command& c : commands) {
    if (c.kind == Command::Kind::DefineSort) {
      aliases[c.symbol] = *c.sort;
    } else if (c.kind == Command::Kind::DeclareFun && !c.sort->is_bool) {
      return c.sort->ff_order;
    } else if (c.kind == Command::Kind::Assert) {
      std::optional<mpz_class> found;
      scan_for_order(*c.term, aliases, found);
      if (found) return found;
    }
  }
  return std::nullopt;
}

}  // namespace

ElabResult elaborate(const std::vector<Command>& commands) {
  ElabCtx cx;
  std::optional<mpz_class> order = discover_order(commands);
  // Pure-Boolean problems still need a field object; F_2 is as canonical a
  // placeholder as any and never shows up in clauses.
  Field field = order ? Field::make(*order) : Field::make(2ul);
  cx.field = field;

  ElabResult result{Problem(field), false, false};
  cx.problem = &result.problem;

  Clausifier clausifier(cx);
  for (const Command& c : commands) {
    switch (c.kind) {
      case Command::Kind::SetLogic:
      case Command::Kind::Ignored:
      case Command::Kind::Exit:
        break;
      case Command::Kind::DefineSort:
        cx.sort_aliases.emplace(c.symbol, *c.sort);
        break;
      case Command::Kind::DeclareFun: {
        if (cx.ff_vars.count(c.symbol) || cx.bool_vars.count(c.symbol))
          fail(Errc::ParseError, c.loc, "'" + c.symbol + "' redeclared");
        if (c.sort->is_bool) {
          cx.bool_vars[c.symbol] =
              cx.problem->add_bool_atom(c.symbol, false, nullptr);
        } else {
          cx.the_field(c.sort->ff_order, c.loc);
          cx.ff_vars[c.symbol] = cx.problem->add_var(c.symbol);
        }
        break;
      }
      case Command::Kind::Assert: {
        TypedTerm t = elab_term(cx, *c.term, nullptr);
        if (t.is_ff) fail(Errc::SortError, c.loc, "asserted term is not Boolean");
        cx.problem->assertions.push_back(t.boolean);
        clausifier.assert_term(t.boolean);
        break;
      }
      case Command::Kind::CheckSat:
        result.saw_check_sat = true;
        break;
      case Command::Kind::GetModel:
        result.saw_get_model = true;
        break;
    }
  }
  if (cx.empty_clause) {
    // Canonical empty-clause problem: a single unsatisfiable clause.
    result.problem.clauses.clear();
    result.problem.clauses.push_back(Clause{{}, ClauseOrigin::Input});
  }
  return result;
}

ElabResult parse_smt2(const std::string& text) {
  return elaborate(parse_commands(tokenize(text)));
}

// ---------------------------------------------------------------------------
// Printing.

namespace {

std::string ff_const_smt2(const FieldElement& v, const std::string& sort_text) {
  return "(as ff" + v.value().get_str() + " " + sort_text + ")";
}

}  // namespace

std::string poly_to_smt2(const Polynomial& poly,
                         const std::vector<std::string>& var_names,
                         const std::string& sort_text) {
  if (poly.is_zero()) return ff_const_smt2(poly.field().zero(), sort_text);
  std::vector<std::string> monos;
  for (const Monomial& m : poly.monomials()) {
    std::vector<std::string> factors;
    if (m.coeff.value() != 1 || m.exps.empty())
      factors.push_back(ff_const_smt2(m.coeff, sort_text));
    for (auto& [v, e] : m.exps)
      for (unsigned k = 0; k < e; ++k) factors.push_back(var_names[v]);
    if (factors.size() == 1) {
      monos.push_back(factors[0]);
    } else {
      std::string s = "(ff.mul";
      for (auto& f : factors) s += " " + f;
      monos.push_back(s + ")");
    }
  }
  if (monos.size() == 1) return monos[0];
  std::string s = "(ff.add";
  for (auto& m : monos) s += " " + m;
  return s + ")";
}

std::string print_problem_smt2(const Problem& p) {
  std::ostringstream os;
  os << "(set-logic QF_FFA)\n";
  std::string sort_text = "FF";
  os << "(define-sort FF () (_ FiniteField " << p.field.order().get_str()
     << "))\n";
  for (const std::string& name : p.var_names)
    os << "(declare-fun " << name << " () FF)\n";
  for (const AtomInfo& a : p.atoms)
    if (a.kind == AtomInfo::Kind::BoolVar)
      os << "(declare-fun " << a.name << " () Bool)\n";
  auto lit_text = [&](Literal l) {
    const AtomInfo& a = p.atoms[l.atom()];
    std::string pos =
        a.kind == AtomInfo::Kind::BoolVar
            ? a.name
            : "(= " + poly_to_smt2(*a.poly, p.var_names, sort_text) + " " +
                  ff_const_smt2(p.field.zero(), sort_text) + ")";
    return l.positive() ? pos : "(not " + pos + ")";
  };
  for (const Clause& c : p.clauses) {
    if (c.lits.empty()) {
      os << "(assert false)\n";
      continue;
    }
    os << "(assert ";
    if (c.lits.size() == 1) {
      os << lit_text(c.lits[0]);
    } else {
      os << "(or";
      for (Literal l : c.lits) os << " " << lit_text(l);
      os << ")";
    }
    os << ")\n";
  }
  os << "(check-sat)\n";
  return os.str();
}

std::string print_model_smt2(const Problem& p, const Model& m) {
  std::ostringstream os;
  os << "(\n";
  std::string ord = p.field.order().get_str();
  for (VarId v = 0; v < p.var_names.size(); ++v) {
    const FieldElement* val = m.ff.try_get(v);
    internal_check(val != nullptr, "model missing an FF variable");
    os << "  (define-fun " << p.var_names[v] << " () (_ FiniteField " << ord
       << ") (_ ff" << val->value().get_str() << " " << ord << "))\n";
  }
  for (AtomId a = 0; a < p.atoms.size(); ++a) {
    const AtomInfo& info = p.atoms[a];
    if (info.kind != AtomInfo::Kind::BoolVar || info.aux) continue;
    if (a < m.bool_atoms.size() && m.bool_atoms[a] != Lbool::Undef)
      os << "  (define-fun " << info.name << " () Bool "
         << (m.bool_atoms[a] == Lbool::True ? "true" : "false") << ")\n";
  }
  os << ")\n";
  return os.str();
}

}  // namespace ffmcsat
