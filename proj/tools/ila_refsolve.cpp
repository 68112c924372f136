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

// Reference SMT-LIB solver for the script subset this toolkit emits: decides
// by exhaustive evaluation and answers get-value like an ordinary solver.
// Intended as a drop-in solver command for tests and offline use:
//
//   ila-refsolve file.smt2
//   ila-refsolve < file.smt2

#include <fstream>
#include <iostream>
#include <sstream>

#include "ila/smt.hpp"

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  unsigned budget = 26;
  if (const char* env = getenv("ILA_REFSOLVE_BUDGET"))
    budget = static_cast<unsigned>(atoi(env));
  std::string text;
  if (argc > 1) {
    std::ifstream f(argv[1]);
    if (!f) {
      std::cerr << "cannot open " << argv[1] << "\n";
      return 1;
    }
    text = read_all(f);
  } else {
    text = read_all(std::cin);
  }

  try {
    ila::ParsedScript ps = ila::read_smtlib(text);
    ila::SmtQuery q{ps.ctx, ps.assertions, "refsolve"};
    ila::SolveResult r;
    try {
      r = ila::brute_force(q, budget);
    } catch (const ila::BudgetExceeded&) {
      std::cout << "unknown" << std::endl;
      return 0;
    }
    if (r.status == ila::SolveStatus::kUnsat) {
      std::cout << "unsat" << std::endl;
      return 0;
    }
    std::cout << "sat" << std::endl;
    if (!ps.value_terms.empty()) {
      // Evaluate the requested terms under the witness.
      ila::UfTable ufs;
      std::set<std::string> names;
      for (const ila::Expr& t : ps.value_terms) {
        std::set<ila::FuncSymbol> fs;
        ila::collect_func_symbols(t, fs);
        for (const auto& f : fs) names.insert(f.name);
      }
      for (const std::string& name : names)
        ufs.define(name, [&r, name](const std::vector<ila::BvValue>& args) {
          auto it = r.uf_model.find(ila::uf_key(name, args));
          return it == r.uf_model.end() ? ila::BvValue(0) : it->second;
        });
      std::string out = "(";
      for (size_t i = 0; i < ps.value_terms.size(); ++i) {
        ila::Expr t = ps.value_terms[i];
        ila::Value v = ila::eval(t, r.model, ufs);
        if (i) out += "\n ";
        out += "(" + ila::smt_detail::render_str(t) + " ";
        if (ila::value_is_bool(v))
          out += ila::as_bool(v) ? "true" : "false";
        else
          out += ila::smt_detail::smt_literal(ila::as_bv(v),
                                              t.sort().width());
        out += ")";
      }
      out += ")";
      std::cout << out << std::endl;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
