//
// Copyright 2026 The ilatk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// SMT-LIB2 script emission and external solver driving. Scripts are plain
// QF_AUFBV with uninterpreted functions; model values are fetched with
// get-value over scalar terms only (arrays are read back through the select
// terms the formula itself mentions).

#ifndef ILA_SMT_HPP_
#define ILA_SMT_HPP_

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ila/brute.hpp"
#include "ila/sexpr.hpp"

namespace ila {

class EngineUnavailable : public std::runtime_error {
 public:
  explicit EngineUnavailable(const std::string& what)
      : std::runtime_error(what) {}
};

class SolverParseError : public std::runtime_error {
 public:
  SolverParseError(const std::string& what, std::string raw)
      : std::runtime_error(what + "\n--- solver output ---\n" + raw),
        raw_(std::move(raw)) {}
  const std::string& raw_output() const { return raw_; }

 private:
  std::string raw_;
};

// A rendered script plus everything needed to interpret the solver's answer:
// the (reversible) name mangling and the ordered list of queried terms.
struct SmtScript {
  std::string text;
  std::map<std::string, std::string> mangling;  // smt symbol -> original
  // Queried model terms, in get-value order.
  struct Request {
    enum class Kind { kScalar, kArrayAddr, kArrayCell };
    Kind kind;
    VarRef var;     // scalar var, or the array var for addr/cell pairs
    size_t group;   // pairs an ArrayAddr with its following ArrayCell
  };
  std::vector<Request> requests;
  bool has_requests = false;
};

namespace smt_detail {

inline bool plain_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '@';
}

inline std::string mangle_name(const std::string& name) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (char c : name) {
    if (plain_char(c)) {
      out += c;
    } else {
      out += '%';
      out += hex[(static_cast<unsigned char>(c) >> 4) & 0xF];
      out += hex[static_cast<unsigned char>(c) & 0xF];
    }
  }
  if (!out.empty() && out[0] >= '0' && out[0] <= '9') out = "v%" + out;
  return out;
}

inline std::string smt_sort(const Sort& s) {
  if (s.is_bool()) return "Bool";
  if (s.is_bv()) return "(_ BitVec " + std::to_string(s.width()) + ")";
  return "(Array (_ BitVec " + std::to_string(s.addr_width()) +
         ") (_ BitVec " + std::to_string(s.data_width()) + "))";
}

inline std::string smt_literal(const BvValue& v, unsigned width) {
  if (width % 4 == 0) {
    static const char* hex = "0123456789abcdef";
    std::string digits;
    BvValue x = v;
    for (unsigned i = 0; i < width / 4; ++i) {
      digits += hex[(x & 0xF).convert_to<unsigned>()];
      x >>= 4;
    }
    return "#x" + std::string(digits.rbegin(), digits.rend());
  }
  std::string bits;
  for (unsigned i = 0; i < width; ++i)
    bits += bit_test(v, width - 1 - i) ? '1' : '0';
  return "#b" + bits;
}

inline const char* smt_op(Op op) {
  switch (op) {
    case Op::kNot: return "not";
    case Op::kAnd: return "and";
    case Op::kOr: return "or";
    case Op::kXor: return "xor";
    case Op::kImplies: return "=>";
    case Op::kIte: return "ite";
    case Op::kBvNot: return "bvnot";
    case Op::kBvAnd: return "bvand";
    case Op::kBvOr: return "bvor";
    case Op::kBvXor: return "bvxor";
    case Op::kBvAdd: return "bvadd";
    case Op::kBvSub: return "bvsub";
    case Op::kBvMul: return "bvmul";
    case Op::kBvUdiv: return "bvudiv";
    case Op::kBvUrem: return "bvurem";
    case Op::kShl: return "bvshl";
    case Op::kLshr: return "bvlshr";
    case Op::kAshr: return "bvashr";
    case Op::kConcat: return "concat";
    case Op::kEq: return "=";
    case Op::kUlt: return "bvult";
    case Op::kUle: return "bvule";
    case Op::kSlt: return "bvslt";
    case Op::kSle: return "bvsle";
    case Op::kSelect: return "select";
    case Op::kStore: return "store";
    default: return nullptr;
  }
}

inline void render(Expr e, std::string& out) {
  switch (e.op()) {
    case Op::kVar:
      out += mangle_name(e.var().name);
      return;
    case Op::kBoolConst:
      out += e.bool_value() ? "true" : "false";
      return;
    case Op::kBvConst:
      out += smt_literal(e.bv_value(), e.sort().width());
      return;
    case Op::kExtract:
      out += "((_ extract " + std::to_string(e.param0()) + " " +
             std::to_string(e.param1()) + ") ";
      render(e.arg(0), out);
      out += ")";
      return;
    case Op::kZeroExtend:
    case Op::kSignExtend:
      out += "((_ ";
      out += e.op() == Op::kZeroExtend ? "zero_extend" : "sign_extend";
      out += " " + std::to_string(e.param0()) + ") ";
      render(e.arg(0), out);
      out += ")";
      return;
    case Op::kApply: {
      out += "(" + mangle_name(e.func().name);
      for (const Expr& a : e.args()) {
        out += " ";
        render(a, out);
      }
      out += ")";
      return;
    }
    default: {
      out += "(";
      out += smt_op(e.op());
      for (const Expr& a : e.args()) {
        out += " ";
        render(a, out);
      }
      out += ")";
      return;
    }
  }
}

inline std::string render_str(Expr e) {
  std::string s;
  render(e, s);
  return s;
}

}  // namespace smt_detail

// ---------------------------------------------------------------------------
// Emission.

inline SmtScript emit_smtlib_impl(const std::vector<Expr>& assertions,
                                  bool want_model) {
  SmtScript script;
  std::set<VarRef> vars;
  std::set<FuncSymbol> funcs;
  std::map<VarRef, std::set<Expr>> addr_terms;
  for (const Expr& a : assertions) {
    collect_free_vars(a, vars);
    collect_func_symbols(a, funcs);
    detail::collect_address_terms(a, addr_terms);
  }

  std::string& out = script.text;
  out += "; ilatk smt-lib script\n";
  for (const VarRef& v : vars) {
    std::string m = smt_detail::mangle_name(v.name);
    script.mangling[m] = v.name;
    if (m != v.name) out += "; name " + m + " " + v.name + "\n";
  }
  for (const FuncSymbol& f : funcs) {
    std::string m = smt_detail::mangle_name(f.name);
    script.mangling[m] = f.name;
    if (m != f.name) out += "; name " + m + " " + f.name + "\n";
  }
  out += "(set-option :produce-models true)\n";
  out += "(set-logic QF_AUFBV)\n";
  for (const FuncSymbol& f : funcs) {
    out += "(declare-fun " + smt_detail::mangle_name(f.name) + " (";
    for (size_t i = 0; i < f.arg_sorts.size(); ++i) {
      if (i) out += " ";
      out += smt_detail::smt_sort(f.arg_sorts[i]);
    }
    out += ") " + smt_detail::smt_sort(f.result_sort) + ")\n";
  }
  for (const VarRef& v : vars)
    out += "(declare-fun " + smt_detail::mangle_name(v.name) + " () " +
           smt_detail::smt_sort(v.sort) + ")\n";
  for (const Expr& a : assertions)
    out += "(assert " + smt_detail::render_str(a) + ")\n";
  out += "(check-sat)\n";

  if (want_model) {
    std::vector<std::string> terms;
    size_t group = 0;
    for (const VarRef& v : vars) {
      if (v.sort.is_array()) continue;
      terms.push_back(smt_detail::mangle_name(v.name));
      script.requests.push_back(
          SmtScript::Request{SmtScript::Request::Kind::kScalar, v, 0});
    }
    for (const VarRef& v : vars) {
      if (!v.sort.is_array()) continue;
      auto it = addr_terms.find(v);
      if (it == addr_terms.end()) continue;
      for (const Expr& t : it->second) {
        std::string addr = smt_detail::render_str(t);
        terms.push_back(addr);
        script.requests.push_back(
            SmtScript::Request{SmtScript::Request::Kind::kArrayAddr, v,
                               group});
        terms.push_back("(select " + smt_detail::mangle_name(v.name) + " " +
                        addr + ")");
        script.requests.push_back(
            SmtScript::Request{SmtScript::Request::Kind::kArrayCell, v,
                               group});
        ++group;
      }
    }
    if (!terms.empty()) {
      out += "(get-value (";
      for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " ";
        out += terms[i];
      }
      out += "))\n";
      script.has_requests = true;
    }
  }
  return script;
}

// ---------------------------------------------------------------------------
// Script reading: enough of SMT-LIB2 to parse back what emit_smtlib writes.
// Serves the emission self-check and the bundled reference solver.

struct ParsedScript {
  std::shared_ptr<TermContext> ctx;
  std::string logic;
  std::map<std::string, VarRef> vars;          // by mangled symbol
  std::map<std::string, FuncSymbol> funcs;     // by mangled symbol
  std::map<std::string, std::string> demangle; // from the name comments
  std::vector<Expr> assertions;
  std::vector<Expr> value_terms;  // get-value requests, in order
  bool check_sat = false;
};

namespace smt_detail {

inline Sort parse_sort(const SNode& n) {
  if (n.is_atom) {
    if (n.atom == "Bool") return Sort::boolean();
    throw SyntaxError(n.span, "unknown sort " + n.atom);
  }
  if (n.size() == 3 && n[0].is_atom && n[0].atom == "_" &&
      n[1].atom == "BitVec")
    return Sort::bitvec(static_cast<unsigned>(std::stoul(n[2].atom)));
  if (n.size() == 3 && n.head() == "Array") {
    Sort a = parse_sort(n[1]);
    Sort d = parse_sort(n[2]);
    return Sort::array(a.width(), d.width());
  }
  throw SyntaxError(n.span, "unsupported sort");
}

inline BvValue parse_bv_literal(const std::string& atom, unsigned* width) {
  if (atom.rfind("#b", 0) == 0) {
    BvValue v = 0;
    for (size_t i = 2; i < atom.size(); ++i)
      v = (v << 1) | (atom[i] == '1' ? 1 : 0);
    *width = static_cast<unsigned>(atom.size() - 2);
    return v;
  }
  if (atom.rfind("#x", 0) == 0) {
    BvValue v = 0;
    for (size_t i = 2; i < atom.size(); ++i) {
      char c = atom[i];
      unsigned d = c >= '0' && c <= '9'   ? c - '0'
                   : c >= 'a' && c <= 'f' ? c - 'a' + 10
                   : c >= 'A' && c <= 'F' ? c - 'A' + 10
                                          : 16;
      if (d == 16) throw std::runtime_error("bad hex literal " + atom);
      v = (v << 4) | d;
    }
    *width = static_cast<unsigned>((atom.size() - 2) * 4);
    return v;
  }
  throw std::runtime_error("not a bitvector literal: " + atom);
}

inline Expr parse_term(TermContext& ctx, const SNode& n,
                       const ParsedScript& env) {
  if (n.is_atom) {
    if (n.atom == "true") return ctx.bool_const(true);
    if (n.atom == "false") return ctx.bool_const(false);
    if (n.atom.rfind("#b", 0) == 0 || n.atom.rfind("#x", 0) == 0) {
      unsigned w = 0;
      BvValue v = parse_bv_literal(n.atom, &w);
      return ctx.bv_const(w, v);
    }
    auto it = env.vars.find(n.atom);
    if (it == env.vars.end())
      throw SyntaxError(n.span, "undeclared symbol " + n.atom);
    return ctx.var(it->second);
  }
  if (n.size() == 0) throw SyntaxError(n.span, "empty term");
  // Parameterized heads: ((_ extract hi lo) x) and friends.
  if (n[0].is_list() && n[0].head() == "_") {
    const SNode& h = n[0];
    const std::string& kind = h[1].expect_atom("indexed operator");
    if (kind == "extract")
      return ctx.extract(static_cast<unsigned>(std::stoul(h[2].atom)),
                         static_cast<unsigned>(std::stoul(h[3].atom)),
                         parse_term(ctx, n[1], env));
    if (kind == "zero_extend")
      return ctx.zero_extend(static_cast<unsigned>(std::stoul(h[2].atom)),
                             parse_term(ctx, n[1], env));
    if (kind == "sign_extend")
      return ctx.sign_extend(static_cast<unsigned>(std::stoul(h[2].atom)),
                             parse_term(ctx, n[1], env));
    throw SyntaxError(h.span, "unsupported indexed operator " + kind);
  }
  const std::string head = n.head();
  std::vector<Expr> args;
  for (size_t i = 1; i < n.size(); ++i)
    args.push_back(parse_term(ctx, n[i], env));

  auto f = env.funcs.find(head);
  if (f != env.funcs.end()) return ctx.apply(f->second, args);

  static const std::map<std::string, Op> ops = {
      {"not", Op::kNot},       {"and", Op::kAnd},
      {"or", Op::kOr},         {"xor", Op::kXor},
      {"=>", Op::kImplies},    {"ite", Op::kIte},
      {"bvnot", Op::kBvNot},   {"bvand", Op::kBvAnd},
      {"bvor", Op::kBvOr},     {"bvxor", Op::kBvXor},
      {"bvadd", Op::kBvAdd},   {"bvsub", Op::kBvSub},
      {"bvmul", Op::kBvMul},   {"bvudiv", Op::kBvUdiv},
      {"bvurem", Op::kBvUrem}, {"bvshl", Op::kShl},
      {"bvlshr", Op::kLshr},   {"bvashr", Op::kAshr},
      {"concat", Op::kConcat}, {"=", Op::kEq},
      {"bvult", Op::kUlt},     {"bvule", Op::kUle},
      {"bvslt", Op::kSlt},     {"bvsle", Op::kSle},
      {"select", Op::kSelect}, {"store", Op::kStore}};
  auto op = ops.find(head);
  if (op == ops.end())
    throw SyntaxError(n.span, "unsupported operator " + head);
  return ctx.app(op->second, args);
}

}  // namespace smt_detail

/// Parses one of our own scripts back into terms (mangled names preserved as
/// variable names; the demangling table is read from the header comments).
inline ParsedScript read_smtlib(const std::string& text) {
  ParsedScript ps;
  ps.ctx = std::make_shared<TermContext>();

  // Name comments: "; name <mangled> <original>".
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    if (line.rfind("; name ", 0) == 0) {
      std::string rest = line.substr(7);
      size_t sp = rest.find(' ');
      if (sp != std::string::npos)
        ps.demangle[rest.substr(0, sp)] = rest.substr(sp + 1);
    }
    pos = eol + 1;
  }

  for (const SNode& form : parse_sexprs(text)) {
    const std::string head = form.head();
    if (head == "set-logic") {
      ps.logic = form[1].atom;
    } else if (head == "set-option") {
      continue;
    } else if (head == "declare-fun" || head == "declare-const") {
      std::string name = form[1].expect_atom("symbol");
      bool is_const = head == "declare-const" || form[2].size() == 0;
      const SNode& ret = head == "declare-const" ? form[2] : form[3];
      if (is_const) {
        Sort s = smt_detail::parse_sort(ret);
        ps.vars[name] = VarRef{name, s, VarKind::kState};
      } else {
        FuncSymbol f;
        f.name = name;
        for (const SNode& a : form[2].items)
          f.arg_sorts.push_back(smt_detail::parse_sort(a));
        f.result_sort = smt_detail::parse_sort(ret);
        ps.funcs[name] = f;
      }
    } else if (head == "assert") {
      ps.assertions.push_back(smt_detail::parse_term(*ps.ctx, form[1], ps));
    } else if (head == "check-sat") {
      ps.check_sat = true;
    } else if (head == "get-value") {
      for (const SNode& t : form[1].items)
        ps.value_terms.push_back(smt_detail::parse_term(*ps.ctx, t, ps));
    } else if (head == "exit") {
      continue;
    } else {
      throw SyntaxError(form.span, "unsupported command " + head);
    }
  }
  return ps;
}

/// Emits a script for the conjunction of assertions, self-checking that the
/// module's own reader accepts the output and sees the same terms.
inline SmtScript emit_smtlib(const std::vector<Expr>& assertions,
                             bool want_model = true) {
  SmtScript script = emit_smtlib_impl(assertions, want_model);
  ParsedScript back = read_smtlib(script.text);
  if (back.assertions.size() != assertions.size())
    throw std::runtime_error("smt emission self-check: assertion count");
  for (size_t i = 0; i < assertions.size(); ++i) {
    // The reader keeps mangled names; rename ours the same way to compare.
    Expr renamed = rename_symbols(
        *back.ctx, assertions[i],
        [](const VarRef& v) {
          return VarRef{smt_detail::mangle_name(v.name), v.sort,
                        VarKind::kState};
        },
        [](const FuncSymbol& f) {
          return FuncSymbol{smt_detail::mangle_name(f.name), f.arg_sorts,
                            f.result_sort};
        });
    if (!structurally_equal(renamed, back.assertions[i]))
      throw std::runtime_error("smt emission self-check: assertion " +
                               std::to_string(i) + " did not round-trip");
  }
  return script;
}

inline SmtScript emit_smtlib(const SmtQuery& q, bool want_model = true) {
  return emit_smtlib(q.assertions, want_model);
}

inline SmtScript emit_smtlib(const UnrolledFormula& f,
                             bool want_model = true) {
  return emit_smtlib(f.all_assertions(), want_model);
}

// ---------------------------------------------------------------------------
// External solving.

struct SolverConfig {
  // Shell command; "{file}" is replaced by the script path. Without the
  // placeholder the script is piped through standard input.
  std::string cmd_template;
  double timeout_seconds = 60.0;
};

namespace smt_detail {

struct RunOutput {
  std::string out;
  int exit_code = -1;
  bool timed_out = false;
};

inline RunOutput run_subprocess(const std::string& shell_cmd,
                                const std::string& stdin_data,
                                double timeout_seconds) {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
    throw EngineUnavailable("pipe() failed");
  pid_t pid = fork();
  if (pid < 0) throw EngineUnavailable("fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], 0);
    dup2(out_pipe[1], 1);
    dup2(out_pipe[1], 2);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", shell_cmd.c_str(), (char*)nullptr);
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);

  // Feed stdin, then read everything with a deadline.
  size_t written = 0;
  while (written < stdin_data.size()) {
    ssize_t n = write(in_pipe[1], stdin_data.data() + written,
                      stdin_data.size() - written);
    if (n <= 0) break;
    written += static_cast<size_t>(n);
  }
  close(in_pipe[1]);

  RunOutput result;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(timeout_seconds);
  char buf[4096];
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline - std::chrono::steady_clock::now())
                    .count();
    if (left <= 0) {
      result.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    struct pollfd pfd{out_pipe[0], POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(left));
    if (pr <= 0) {
      result.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    ssize_t n = read(out_pipe[0], buf, sizeof(buf));
    if (n <= 0) break;
    result.out.append(buf, static_cast<size_t>(n));
  }
  close(out_pipe[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline BvValue parse_model_value(const SNode& n, bool* is_bool_true,
                                 bool* boolean) {
  *boolean = false;
  if (n.is_atom) {
    if (n.atom == "true" || n.atom == "false") {
      *boolean = true;
      *is_bool_true = n.atom == "true";
      return BvValue(*is_bool_true ? 1 : 0);
    }
    if (n.atom.rfind("#", 0) == 0) {
      unsigned w = 0;
      return parse_bv_literal(n.atom, &w);
    }
    return BvValue(n.atom);  // plain numeral
  }
  // (_ bvN width)
  if (n.size() == 3 && n[0].is_atom && n[0].atom == "_" &&
      n[1].atom.rfind("bv", 0) == 0)
    return BvValue(n[1].atom.substr(2));
  throw std::runtime_error("unsupported model value form");
}

}  // namespace smt_detail

/// Runs an external SMT-LIB solver over the script and parses status and,
/// when sat, the values of the queried terms.
inline SolveResult solve(const SmtScript& script, const SolverConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  SolveResult res;
  res.engine_id = "solver";

  std::string cmd = cfg.cmd_template;
  std::string tmp_path;
  std::string stdin_data;
  size_t ph = cmd.find("{file}");
  if (ph != std::string::npos) {
    char tmpl[] = "/tmp/ilatk-XXXXXX.smt2";
    int fd = mkstemps(tmpl, 5);
    if (fd < 0) throw EngineUnavailable("cannot create temp file");
    tmp_path = tmpl;
    if (write(fd, script.text.data(), script.text.size()) < 0) {
      close(fd);
      throw EngineUnavailable("cannot write temp file");
    }
    close(fd);
    cmd.replace(ph, 6, tmp_path);
  } else {
    stdin_data = script.text;
  }

  smt_detail::RunOutput run =
      smt_detail::run_subprocess(cmd, stdin_data, cfg.timeout_seconds);
  if (!tmp_path.empty()) unlink(tmp_path.c_str());

  res.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  if (run.timed_out) {
    res.status = SolveStatus::kUnknown;
    res.reason = "timeout";
    return res;
  }
  if (run.exit_code == 127)
    throw EngineUnavailable("solver command not found: " + cfg.cmd_template);

  // First status token wins; anything after an unsat get-value error is
  // ignored.
  std::string status_line;
  {
    size_t pos = 0;
    while (pos < run.out.size() && status_line.empty()) {
      size_t eol = run.out.find('\n', pos);
      if (eol == std::string::npos) eol = run.out.size();
      std::string line = run.out.substr(pos, eol - pos);
      while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
      if (line == "sat" || line == "unsat" || line == "unknown")
        status_line = line;
      pos = eol + 1;
    }
  }
  if (status_line.empty())
    throw SolverParseError("no sat/unsat/unknown in solver output", run.out);

  if (status_line == "unknown") {
    res.status = SolveStatus::kUnknown;
    res.reason = "solver returned unknown";
    return res;
  }
  if (status_line == "unsat") {
    res.status = SolveStatus::kUnsat;
    return res;
  }
  res.status = SolveStatus::kSat;
  if (!script.has_requests) return res;

  // The model response is the first s-expression after the status line.
  size_t mp = run.out.find(status_line);
  mp = run.out.find('(', mp);
  if (mp == std::string::npos) {
    if (!script.requests.empty())
      throw SolverParseError("sat without get-value response", run.out);
    return res;
  }
  std::vector<SNode> forms;
  try {
    forms = parse_sexprs(run.out.substr(mp));
  } catch (const SyntaxError& e) {
    throw SolverParseError(std::string("malformed model response: ") +
                               e.what(),
                           run.out);
  }
  if (forms.empty() || forms[0].is_atom)
    throw SolverParseError("malformed model response", run.out);
  const SNode& pairs = forms[0];
  if (pairs.size() != script.requests.size())
    throw SolverParseError("model response arity mismatch", run.out);

  std::map<size_t, BvValue> group_addr;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const SNode& pair = pairs[i];
    if (pair.is_atom || pair.size() != 2)
      throw SolverParseError("malformed model pair", run.out);
    bool bool_true = false, is_bool = false;
    BvValue v;
    try {
      v = smt_detail::parse_model_value(pair[1], &bool_true, &is_bool);
    } catch (const std::exception& e) {
      throw SolverParseError(std::string("bad model value: ") + e.what(),
                             run.out);
    }
    const SmtScript::Request& req = script.requests[i];
    switch (req.kind) {
      case SmtScript::Request::Kind::kScalar:
        if (req.var.sort.is_bool())
          res.model[req.var] = is_bool ? Value(bool_true) : Value(v != 0);
        else
          res.model[req.var] = bv_trunc(v, req.var.sort.width());
        break;
      case SmtScript::Request::Kind::kArrayAddr:
        group_addr[req.group] = v;
        break;
      case SmtScript::Request::Kind::kArrayCell: {
        auto it = res.model.find(req.var);
        if (it == res.model.end()) {
          res.model[req.var] = ArrayValue{BvValue(0), {}};
          res.unconstrained_defaults.insert(req.var.name);
          it = res.model.find(req.var);
        }
        ArrayValue av = as_array(it->second);
        av.overrides[group_addr.at(req.group)] =
            bv_trunc(v, req.var.sort.data_width());
        it->second = av;
        break;
      }
    }
  }
  return res;
}

inline SolveResult solve(const SmtQuery& q, const SolverConfig& cfg) {
  return solve(emit_smtlib(q), cfg);
}

inline SolveResult solve(const UnrolledFormula& f, const SolverConfig& cfg) {
  return solve(emit_smtlib(f), cfg);
}

}  // namespace ila

#endif  // ILA_SMT_HPP_
