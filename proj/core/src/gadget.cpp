#include "ddpp/gadget.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "ddpp/error.hpp"

namespace ddpp {

// ---- DIMACS -------------------------------------------------------------------------

CnfFormula parse_dimacs(std::string_view text, bool pad) {
  CnfFormula f;
  bool header = false;
  long long expected = 0;
  std::vector<Literal> pending;
  int pending_line = 0;
  int line_no = 0;
  auto finish_clause = [&](int at) {
    if (pending.empty()) throw ParseError(at, "empty clause");
    if (pending.size() > 3) throw ParseError(at, "clause has more than three literals");
    for (std::size_t a = 0; a < pending.size(); ++a) {
      for (std::size_t b = a + 1; b < pending.size(); ++b) {
        if (pending[a] == pending[b]) throw ParseError(at, "clause repeats a literal");
      }
    }
    if (pending.size() < 3 && !pad) throw ParseError(at, "clause arity must be 3");
    while (pending.size() < 3) pending.push_back(pending.back());
    f.clauses.push_back({pending[0], pending[1], pending[2]});
    pending.clear();
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::istringstream in{std::string(text.substr(start, end - start))};
    std::string tok;
    if (in >> tok) {
      if (tok == "c") {
        // comment
      } else if (tok == "%") {
        break;
      } else if (tok == "p") {
        if (header) throw ParseError(line_no, "duplicate problem line");
        std::string kind;
        long long n = -1;
        if (!(in >> kind >> n >> expected) || kind != "cnf" || n < 0 || expected < 0) {
          throw ParseError(line_no, "expected 'p cnf <variables> <clauses>'");
        }
        if (n > 1'000'000) throw ParseError(line_no, "too many variables");
        f.variable_count = static_cast<int>(n);
        header = true;
      } else {
        if (!header) throw ParseError(line_no, "clause before problem line");
        do {
          long long lit = 0;
          const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
          if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw ParseError(line_no, "expected integer literal, got '" + tok + "'");
          }
          if (lit == 0) {
            finish_clause(line_no);
            continue;
          }
          const long long var = lit < 0 ? -lit : lit;
          if (var > f.variable_count) throw ParseError(line_no, "variable " + std::to_string(var) + " out of range");
          if (pending.empty()) pending_line = line_no;
          pending.push_back({static_cast<int>(var), lit > 0});
        } while (in >> tok);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!pending.empty()) throw ParseError(pending_line, "clause not terminated by 0");
  if (!header) throw ParseError(line_no, "missing problem line");
  if (static_cast<long long>(f.clauses.size()) != expected) {
    throw ParseError(line_no, "expected " + std::to_string(expected) + " clauses, found " +
                                  std::to_string(f.clauses.size()));
  }
  return f;
}

std::string format_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count << " " << f.clauses.size() << "\n";
  for (const auto& clause : f.clauses) {
    for (const auto& lit : clause) out << (lit.positive ? lit.variable : -lit.variable) << " ";
    out << "0\n";
  }
  return out.str();
}

int first_falsified(const CnfFormula& f, const std::vector<bool>& assignment) {
  require(static_cast<int>(assignment.size()) == f.variable_count, ErrorKind::InvalidInput,
          "assignment length differs from the variable count");
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const bool sat = std::any_of(f.clauses[j].begin(), f.clauses[j].end(), [&](const Literal& lit) {
      return assignment[static_cast<std::size_t>(lit.variable - 1)] == lit.positive;
    });
    if (!sat) return static_cast<int>(j);
  }
  return -1;
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
  return first_falsified(f, assignment) < 0;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  require(slash != std::string_view::npos, ErrorKind::InvalidInput, "epsilon must look like p/q");
  Rational r;
  const auto p_part = text.substr(0, slash);
  const auto q_part = text.substr(slash + 1);
  const auto [p_end, p_ec] = std::from_chars(p_part.data(), p_part.data() + p_part.size(), r.p);
  const auto [q_end, q_ec] = std::from_chars(q_part.data(), q_part.data() + q_part.size(), r.q);
  require(p_ec == std::errc() && q_ec == std::errc() && p_end == p_part.data() + p_part.size() &&
              q_end == q_part.data() + q_part.size(),
          ErrorKind::InvalidInput, "epsilon must look like p/q");
  require(r.p > 0 && r.q > r.p, ErrorKind::InvalidInput, "epsilon must lie strictly between 0 and 1");
  return r;
}

// ---- gadget -------------------------------------------------------------------------

std::vector<std::pair<std::string, Vertex>> GadgetLayout::roles() const {
  std::vector<std::pair<std::string, Vertex>> out;
  const auto num = [](int i) { return std::to_string(i + 1); };
  for (int i = 0; i < n; ++i) {
    out.emplace_back("u" + num(i), u[i]);
    for (const auto& [j, vx] : occurrences[i]) out.emplace_back("v" + num(i) + "," + num(j), vx);
    out.emplace_back("v" + num(i), v[i]);
    out.emplace_back("ubar" + num(i), u_bar[i]);
    for (const auto& [j, vx] : occurrences_bar[i]) out.emplace_back("vbar" + num(i) + "," + num(j), vx);
    out.emplace_back("vbar" + num(i), v_bar[i]);
    out.emplace_back("b" + num(i), b[i]);
    out.emplace_back("b" + num(i) + "'", b_prime[i]);
  }
  for (int j = 0; j < m; ++j) {
    out.emplace_back("c" + num(j), c[j]);
    out.emplace_back("c" + num(j) + "'", c_prime[j]);
  }
  for (int l = 0; l < 3; ++l) out.emplace_back("s" + num(l), s[l]);
  for (int l = 0; l < 3; ++l) out.emplace_back("t" + num(l), t[l]);
  for (int i = 0; i < w_count; ++i) out.emplace_back("w" + num(i), w[i]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  require(!__builtin_mul_overflow(a, b, &out), ErrorKind::SizeLimit, "hub count overflows");
  return out;
}

int hub_count(Rational eps, int k_prime) {
  // ceil(p k' / (q - p)), bumped to even.
  const std::int64_t num = checked_mul(eps.p, k_prime);
  const std::int64_t den = eps.q - eps.p;
  std::int64_t m = (num + den - 1) / den;
  if (m % 2 != 0) ++m;
  require(m <= 1'000'000, ErrorKind::SizeLimit, "epsilon too close to 1: " + std::to_string(m) + " hub vertices");
  return static_cast<int>(m);
}

}  // namespace

Gadget build_gadget(const CnfFormula& f, Rational epsilon) {
  require(epsilon.p > 0 && epsilon.q > epsilon.p, ErrorKind::InvalidInput, "epsilon must lie in (0, 1)");
  require(f.variable_count >= 1, ErrorKind::InvalidInput, "formula needs at least one variable");
  for (const auto& clause : f.clauses) {
    for (const auto& lit : clause) {
      require(lit.variable >= 1 && lit.variable <= f.variable_count, ErrorKind::InvalidInput,
              "literal variable out of range");
    }
  }
  GadgetLayout L;
  L.epsilon = epsilon;
  L.n = f.variable_count;
  L.m = static_cast<int>(f.clauses.size());
  L.k_prime = 3 + L.m + L.n;
  L.w_count = hub_count(epsilon, L.k_prime);
  L.k = L.k_prime + L.w_count;

  Vertex next = 0;
  L.occurrences.resize(static_cast<std::size_t>(L.n));
  L.occurrences_bar.resize(static_cast<std::size_t>(L.n));
  for (int i = 0; i < L.n; ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      const bool positive = pass == 0;
      (positive ? L.u : L.u_bar).push_back(next++);
      auto& occ = positive ? L.occurrences[i] : L.occurrences_bar[i];
      for (int j = 0; j < L.m; ++j) {
        const Literal want{i + 1, positive};
        const auto& clause = f.clauses[j];
        if (std::find(clause.begin(), clause.end(), want) != clause.end()) occ.emplace_back(j, next++);
      }
      (positive ? L.v : L.v_bar).push_back(next++);
    }
    L.b.push_back(next++);
    L.b_prime.push_back(next++);
  }
  for (int j = 0; j < L.m; ++j) {
    L.c.push_back(next++);
    L.c_prime.push_back(next++);
  }
  for (auto& sv : L.s) sv = next++;
  for (auto& tv : L.t) tv = next++;
  L.v1_count = next;
  for (int i = 0; i < L.w_count; ++i) L.w.push_back(next++);

  std::vector<Edge> edges;
  for (int i = 0; i < L.n; ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      const bool positive = pass == 0;
      Path p{positive ? L.u[i] : L.u_bar[i]};
      for (const auto& [j, vx] : positive ? L.occurrences[i] : L.occurrences_bar[i]) p.push_back(vx);
      p.push_back(positive ? L.v[i] : L.v_bar[i]);
      for (std::size_t a = 0; a + 1 < p.size(); ++a) edges.emplace_back(p[a], p[a + 1]);  // E1
      (positive ? L.var_path : L.var_path_bar).push_back(std::move(p));
    }
  }
  for (int i = 0; i + 1 < L.n; ++i) {  // E2
    for (Vertex from : {L.v[i], L.v_bar[i]}) {
      edges.emplace_back(from, L.u[i + 1]);
      edges.emplace_back(from, L.u_bar[i + 1]);
    }
  }
  for (int i = 0; i < L.n; ++i) {  // E3
    for (const auto* occ : {&L.occurrences[i], &L.occurrences_bar[i]}) {
      for (const auto& [j, vx] : *occ) {
        edges.emplace_back(L.c[j], vx);
        edges.emplace_back(vx, L.c_prime[j]);
      }
    }
  }
  for (int i = 0; i < L.n; ++i) {  // E4
    edges.emplace_back(L.b[i], L.v[i]);
    edges.emplace_back(L.b[i], L.v_bar[i]);
    edges.emplace_back(L.v[i], L.b_prime[i]);
    edges.emplace_back(L.v_bar[i], L.b_prime[i]);
  }
  for (int l = 0; l < 3; ++l) {  // E5
    edges.emplace_back(L.s[l], L.u[0]);
    edges.emplace_back(L.s[l], L.u_bar[0]);
    edges.emplace_back(L.v[L.n - 1], L.t[l]);
    edges.emplace_back(L.v_bar[L.n - 1], L.t[l]);
  }
  for (int i = 0; i < L.w_count; ++i) {  // E6
    const Vertex wi = L.w[i];
    for (Vertex x = 0; x < L.v1_count; ++x) {
      edges.emplace_back(wi, x);
      edges.emplace_back(x, wi);
    }
    for (int j = 0; j < i; ++j) {
      edges.emplace_back(wi, L.w[j]);
      edges.emplace_back(L.w[j], wi);
    }
  }

  std::vector<Vertex> sources{L.s[0], L.s[1], L.s[2]};
  std::vector<Vertex> sinks{L.t[0], L.t[1], L.t[2]};
  sources.insert(sources.end(), L.c.begin(), L.c.end());
  sinks.insert(sinks.end(), L.c_prime.begin(), L.c_prime.end());
  sources.insert(sources.end(), L.b.begin(), L.b.end());
  sinks.insert(sinks.end(), L.b_prime.begin(), L.b_prime.end());
  const int half = L.w_count / 2;
  sources.insert(sources.end(), L.w.begin(), L.w.end());
  sinks.insert(sinks.end(), L.w.begin() + half, L.w.end());
  sinks.insert(sinks.end(), L.w.begin(), L.w.begin() + half);

  Gadget out{LinkageInstance(Digraph(next, edges), std::move(sources), std::move(sinks)), std::move(L)};
  return out;
}

PathSystem encode_assignment(const Gadget& gadget, const CnfFormula& f, const std::vector<bool>& assignment) {
  const GadgetLayout& L = gadget.layout;
  require(f.variable_count == L.n && static_cast<int>(f.clauses.size()) == L.m, ErrorKind::InvalidInput,
          "formula does not match the gadget");
  if (const int bad = first_falsified(f, assignment); bad >= 0) {
    fail(ErrorKind::PreconditionViolation, "assignment falsifies clause " + std::to_string(bad + 1));
  }
  PathSystem sol;
  sol.congestion_bound = 2;
  auto chain = [&](Vertex from, Vertex to, auto pick) {
    Path p{from};
    for (int i = 0; i < L.n; ++i) {
      const Path& seg = pick(i) ? L.var_path[i] : L.var_path_bar[i];
      p.insert(p.end(), seg.begin(), seg.end());
    }
    p.push_back(to);
    return p;
  };
  sol.paths.push_back(chain(L.s[0], L.t[0], [](int) { return true; }));
  sol.paths.push_back(chain(L.s[1], L.t[1], [](int) { return false; }));
  sol.paths.push_back(chain(L.s[2], L.t[2], [&](int i) { return !assignment[i]; }));
  for (int j = 0; j < L.m; ++j) {
    Vertex middle = -1;
    for (const auto& lit : f.clauses[j]) {
      const int i = lit.variable - 1;
      if (assignment[i] != lit.positive) continue;
      const auto& occ = lit.positive ? L.occurrences[i] : L.occurrences_bar[i];
      middle = std::find_if(occ.begin(), occ.end(), [&](const auto& o) { return o.first == j; })->second;
      break;
    }
    sol.paths.push_back({L.c[j], middle, L.c_prime[j]});
  }
  for (int i = 0; i < L.n; ++i) {
    sol.paths.push_back({L.b[i], assignment[i] ? L.v[i] : L.v_bar[i], L.b_prime[i]});
  }
  const int half = L.w_count / 2;
  for (int i = 0; i < L.w_count; ++i) {
    sol.paths.push_back({L.w[i], L.w[i < half ? i + half : i - half]});
  }
  const auto check = verify_solution(gadget.instance, sol, 2);
  require(check.ok(), ErrorKind::InvariantViolation, "encoded linkage fails verification: " + check.message);
  return sol;
}

std::vector<bool> decode_solution(const Gadget& gadget, const CnfFormula& f, const PathSystem& sol) {
  const GadgetLayout& L = gadget.layout;
  require(f.variable_count == L.n && static_cast<int>(f.clauses.size()) == L.m, ErrorKind::InvalidInput,
          "formula does not match the gadget");
  const auto check = verify_solution(gadget.instance, sol, 2);
  require(check.ok(), ErrorKind::InvariantViolation, "solution does not verify: " + check.message);
  std::vector<bool> assignment(static_cast<std::size_t>(L.n), false);
  for (int i = 0; i < L.n; ++i) {
    int on_bar = 0;
    for (int l = 0; l < 3; ++l) {
      const Path& p = sol.paths[l];
      if (std::find(p.begin(), p.end(), L.u_bar[i]) != p.end()) ++on_bar;
    }
    assignment[i] = on_bar == 2;
  }
  if (const int bad = first_falsified(f, assignment); bad >= 0) {
    fail(ErrorKind::InvariantViolation, "decoded assignment falsifies clause " + std::to_string(bad + 1));
  }
  return assignment;
}

}  // namespace ddpp
