#include "qfa/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qfa/equivalence.hpp"
#include "qfa/errors.hpp"
#include "qfa/language_lab.hpp"
#include "qfa/serialization.hpp"
#include "qfa/transforms.hpp"

namespace qfa::cli {

using nlohmann::json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Round to 12 significant digits so JSON and text output agree.
double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string quoted(const Word& w, const std::string& sep) { return "\"" + join_word(w, sep) + "\""; }

std::size_t machine_size(const AnyMachine& m) {
  struct Visitor {
    std::size_t operator()(const MO1gQFA& x) const { return x.dim(); }
    std::size_t operator()(const MM1gQFA& x) const { return x.dim(); }
    std::size_t operator()(const MOLM& x) const { return x.dim(); }
    std::size_t operator()(const BilinearMachine& x) const { return x.states(); }
    std::size_t operator()(const ProbabilisticAutomaton& x) const { return x.states(); }
    std::size_t operator()(const DFA& x) const { return x.states(); }
  };
  return std::visit(Visitor{}, m);
}

template <typename T>
const T& require_kind(const AnyMachine& m, const std::string& what) {
  if (const auto* p = std::get_if<T>(&m)) return *p;
  throw UsageError(what + " (got " + kind_name(m) + ")");
}

struct WordOptions {
  std::string sep;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
};

// ---- validate ---------------------------------------------------------------

int cmd_validate(Context& ctx, const std::string& path) {
  const AnyMachine m = load_machine(path);
  ctx.out << "valid " << kind_name(m) << " (size " << machine_size(m) << ")\n";
  const auto report_ops = [&](const std::string& symbol, const QuantumOperation& op) {
    const auto r = validate_operation(op);
    ctx.out << "  " << symbol << ": " << op.kraus().size() << " Kraus operator(s), completeness deviation "
            << fmt(r.deviation) << "\n";
  };
  if (const auto* mo = std::get_if<MO1gQFA>(&m)) {
    for (std::size_t s = 0; s < mo->alphabet().size(); ++s) report_ops(mo->alphabet()[s], mo->op(s));
  } else if (const auto* mm = std::get_if<MM1gQFA>(&m)) {
    report_ops(kCent, mm->cent_op());
    for (std::size_t s = 0; s < mm->alphabet().size(); ++s) report_ops(mm->alphabet()[s], mm->op(s));
    report_ops(kDollar, mm->dollar_op());
  }
  return kOk;
}

// ---- accept / table ---------------------------------------------------------

json value_json(const AnyMachine& m, const Word& w) {
  if (const auto* mo = std::get_if<MO1gQFA>(&m)) return {{"accept", round12(mo_accept_prob(*mo, w))}};
  if (const auto* mm = std::get_if<MM1gQFA>(&m)) {
    const auto r = mm_accept_prob(*mm, w);
    return {{"accept", round12(r.accept)}, {"reject", round12(r.reject)}, {"continue", round12(r.cont)}};
  }
  // MO-LM values are only probabilities for well-formed machines, so they are range-checked here.
  if (const auto* lm = std::get_if<MOLM>(&m)) return {{"accept", round12(checked_probability(molm_accept_prob(*lm, w)))}};
  if (const auto* b = std::get_if<BilinearMachine>(&m)) {
    const Complex z = blm_value(*b, w);
    return {{"value", {round12(z.real()), round12(z.imag())}}};
  }
  if (const auto* p = std::get_if<ProbabilisticAutomaton>(&m)) return {{"accept", round12(pa_accept_prob(*p, w))}};
  return {{"accept", dfa_accepts(std::get<DFA>(m), w)}};
}

std::string value_text(const AnyMachine& m, const Word& w) {
  if (const auto* mm = std::get_if<MM1gQFA>(&m)) {
    const auto r = mm_accept_prob(*mm, w);
    return "accept=" + fmt(r.accept) + " reject=" + fmt(r.reject) + " continue=" + fmt(r.cont);
  }
  if (const auto* b = std::get_if<BilinearMachine>(&m)) return "value=" + fmt(blm_value(*b, w));
  if (const auto* d = std::get_if<DFA>(&m)) return std::string("accept=") + (dfa_accepts(*d, w) ? "1" : "0");
  return "accept=" + fmt(value_json(m, w)["accept"].get<double>());
}

int cmd_accept(Context& ctx, const std::string& path, const std::string& word_text, bool empty, bool as_json,
               const WordOptions& wo) {
  const AnyMachine m = load_machine(path);
  const Word w = empty ? Word{} : parse_word(word_text, wo.sep);
  if (as_json) {
    json j = value_json(m, w);
    j["word"] = join_word(w, wo.sep);
    ctx.out << j.dump() << "\n";
  } else {
    ctx.out << value_text(m, w) << "\n";
  }
  return kOk;
}

std::vector<std::string> input_symbols(const AnyMachine& m) {
  if (const auto* lm = std::get_if<MOLM>(&m)) return lm->alphabet().symbols();
  return make_word_function(m)->symbols();
}

int cmd_table(Context& ctx, const std::string& path, std::size_t max_len, bool as_json, const WordOptions& wo) {
  const AnyMachine m = load_machine(path);
  const auto symbols = input_symbols(m);
  if (word_count_bound(symbols.size(), max_len) > kEnumerationLimit) {
    throw EnumerationGuardError("table: " + std::to_string(symbols.size()) + "^" + std::to_string(max_len) +
                                " words exceed the enumeration limit");
  }
  const bool wrap = std::holds_alternative<MOLM>(m);
  json rows = json::array();
  std::vector<Word> level{Word{}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const auto& x : level) {
      Word w = x;
      if (wrap) {
        w.insert(w.begin(), kCent);
        w.push_back(kDollar);
      }
      if (as_json) {
        json row = value_json(m, w);
        row["word"] = join_word(w, wo.sep);
        rows.push_back(std::move(row));
      } else {
        ctx.out << quoted(w, wo.sep) << "\t" << value_text(m, w) << "\n";
      }
    }
    if (len == max_len) break;
    std::vector<Word> next;
    next.reserve(level.size() * symbols.size());
    for (const auto& x : level)
      for (const auto& s : symbols) {
        Word w = x;
        w.push_back(s);
        next.push_back(std::move(w));
      }
    level = std::move(next);
  }
  if (as_json) ctx.out << rows.dump() << "\n";
  return kOk;
}

// ---- compile / build --------------------------------------------------------

int cmd_compile(Context& ctx, const std::string& path, const std::string& target, const std::string& output) {
  const AnyMachine m = load_machine(path);
  AnyMachine result = [&]() -> AnyMachine {
    if (target == "molm") return mm_to_molm(require_kind<MM1gQFA>(m, "--to molm needs an mm1gqfa input"));
    if (const auto* mo = std::get_if<MO1gQFA>(&m)) return mo_to_blm(*mo);
    if (const auto* lm = std::get_if<MOLM>(&m)) return mo_to_blm(*lm);
    throw UsageError("--to blm needs an mo1gqfa or molm input (got " + kind_name(m) + ")");
  }();
  save_machine(output, result);
  ctx.out << "wrote " << kind_name(result) << " to " << output << "\n";
  return kOk;
}

std::vector<MO1gQFA> load_mo_list(const std::vector<std::string>& paths) {
  std::vector<MO1gQFA> ms;
  for (const auto& p : paths) ms.push_back(require_kind<MO1gQFA>(load_machine(p), p + ": expected an mo1gqfa machine"));
  return ms;
}

int cmd_build(Context& ctx, const std::string& construction, const std::vector<std::string>& inputs,
              const std::vector<double>& weights, const std::string& output) {
  const auto single = [&]() -> const std::string& {
    if (inputs.size() != 1) throw UsageError(construction + " takes exactly one input file");
    return inputs.front();
  };
  AnyMachine result = [&]() -> AnyMachine {
    if (construction == "complement") {
      return complement(require_kind<MO1gQFA>(load_machine(single()), "complement needs an mo1gqfa input"));
    }
    if (construction == "mix") {
      if (weights.size() != inputs.size()) throw UsageError("mix needs one --weights entry per input machine");
      try {
        return convex_combination(load_mo_list(inputs), weights);
      } catch (const ValidationError& e) {
        throw UsageError(e.what());
      }
    }
    if (construction == "product") return product(load_mo_list(inputs));
    if (construction == "embed-pa") {
      return pa_to_mo(require_kind<ProbabilisticAutomaton>(load_machine(single()), "embed-pa needs a pa input"));
    }
    if (construction == "embed-dfa") {
      return pa_to_mo(dfa_to_pa(require_kind<DFA>(load_machine(single()), "embed-dfa needs a dfa input")));
    }
    throw UsageError("unknown construction " + construction);
  }();
  save_machine(output, result);
  ctx.out << "wrote " << kind_name(result) << " to " << output << "\n";
  return kOk;
}

// ---- equiv ------------------------------------------------------------------

int cmd_equiv(Context& ctx, const std::string& path1, const std::string& path2, const std::string& method,
              std::optional<std::size_t> k, double tol, bool as_json, const WordOptions& wo) {
  const AnyMachine a = load_machine(path1);
  const AnyMachine b = load_machine(path2);
  EquivalenceVerdict v;
  if (method == "brute") {
    const std::size_t bound = k.value_or((machine_size(a) + machine_size(b)) * (machine_size(a) + machine_size(b)));
    v = k_equivalent_bruteforce(a, b, bound, tol);
  } else {
    const auto* mo1 = std::get_if<MO1gQFA>(&a);
    const auto* mo2 = std::get_if<MO1gQFA>(&b);
    const auto* mm1 = std::get_if<MM1gQFA>(&a);
    const auto* mm2 = std::get_if<MM1gQFA>(&b);
    if (mo1 && mo2) {
      v = equivalent_mo(*mo1, *mo2, method == "blm" ? EquivalenceMethod::blm : EquivalenceMethod::direct, tol);
    } else if (mm1 && mm2) {
      v = equivalent_mm(*mm1, *mm2, method == "blm" ? EquivalenceMethod::blm : EquivalenceMethod::direct, tol);
    } else {
      throw UsageError("--method " + method + " supports two mo1gqfa or two mm1gqfa machines; use --method brute for " +
                       kind_name(a) + " vs " + kind_name(b));
    }
  }
  if (as_json) {
    json j = {{"verdict", v.equivalent ? "equivalent" : "not_equivalent"},
              {"counterexample", v.counterexample ? json(join_word(*v.counterexample, wo.sep)) : json(nullptr)},
              {"gap", v.value_gap ? json(round12(*v.value_gap)) : json(nullptr)},
              {"basis_size", v.basis_size},
              {"tolerance", v.tolerance}};
    ctx.out << j.dump() << "\n";
  } else {
    ctx.out << (v.equivalent ? "equivalent" : "not equivalent") << "\n";
    if (v.counterexample) ctx.out << "counterexample=" << quoted(*v.counterexample, wo.sep) << "\n";
    if (v.value_gap) ctx.out << "gap=" << fmt(*v.value_gap) << "\n";
    ctx.out << "basis_size=" << v.basis_size << "\n"
            << "words_explored=" << v.words_explored << "\n"
            << "tolerance=" << fmt(v.tolerance) << "\n";
  }
  return kOk;
}

// ---- check-language -----------------------------------------------------------

int cmd_check_language(Context& ctx, const std::string& machine_path, const std::string& dfa_path, double lambda,
                       double epsilon, std::size_t max_len, bool skip_empty, bool as_json, const WordOptions& wo) {
  const AnyMachine m = load_machine(machine_path);
  const AnyMachine reference_file = load_machine(dfa_path);
  const DFA& reference = require_kind<DFA>(reference_file, dfa_path + ": expected a dfa");
  RecognizingMachine machine = [&]() -> RecognizingMachine {
    if (const auto* mo = std::get_if<MO1gQFA>(&m)) return *mo;
    if (const auto* mm = std::get_if<MM1gQFA>(&m)) return *mm;
    throw UsageError("check-language needs an mo1gqfa or mm1gqfa machine (got " + kind_name(m) + ")");
  }();
  std::set<Word> skip;
  if (skip_empty) skip.insert(Word{});
  RecognitionReport r;
  try {
    r = check_bounded_error(machine, reference, lambda, epsilon, max_len, skip);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto witness_json = [&](const std::optional<Witness>& w) {
    return w ? json{{"word", join_word(w->word, wo.sep)}, {"value", round12(w->value)}} : json(nullptr);
  };
  if (as_json) {
    json j = {{"lambda", r.lambda},
              {"epsilon", r.epsilon},
              {"worst_in", witness_json(r.worst_in)},
              {"worst_out", witness_json(r.worst_out)},
              {"pass", r.pass}};
    ctx.out << j.dump() << "\n";
  } else {
    ctx.out << (r.pass ? "pass" : "fail") << "\n"
            << "lambda=" << fmt(r.lambda) << " epsilon=" << fmt(r.epsilon) << " max_len=" << r.max_len
            << " words=" << r.words_checked << "\n";
    if (r.worst_in) ctx.out << "worst_in=" << quoted(r.worst_in->word, wo.sep) << " value=" << fmt(r.worst_in->value) << "\n";
    if (r.worst_out) {
      ctx.out << "worst_out=" << quoted(r.worst_out->word, wo.sep) << " value=" << fmt(r.worst_out->value) << "\n";
    }
  }
  return r.pass ? kOk : kValidation;
}

}  // namespace

Word parse_word(std::string_view text, std::string_view sep) {
  Word out;
  if (text.empty()) return out;
  if (!sep.empty()) {
    std::size_t pos = 0;
    while (true) {
      const std::size_t next = text.find(sep, pos);
      out.emplace_back(text.substr(pos, next - pos));
      if (next == std::string_view::npos) break;
      pos = next + sep.size();
    }
    return out;
  }
  for (std::size_t i = 0; i < text.size();) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"General quantum finite automata: simulation, compilation and equivalence"};
  app.require_subcommand(1);
  Context ctx{out, err};
  WordOptions wo;
  bool as_json = false;
  int status = kOk;

  std::string path, path2, word, target, output, method = "direct", construction;
  std::vector<std::string> inputs;
  std::vector<double> weights;
  std::size_t max_len = 0;
  std::optional<std::size_t> k;
  double tol = kDefaultEquivalenceTolerance;
  double lambda = 0.0, epsilon = 0.0;
  bool empty = false, skip_empty = false;

  auto* validate = app.add_subcommand("validate", "Load a machine file and check its invariants");
  validate->add_option("file", path)->required();

  auto* accept = app.add_subcommand("accept", "Acceptance value(s) of one word");
  accept->add_option("file", path)->required();
  accept->add_option("word", word, "Word; empty string for the empty word");
  accept->add_flag("--empty", empty, "Evaluate the empty word");
  accept->add_flag("--json", as_json);
  accept->add_option("--sep", wo.sep, "Symbol separator for multi-character symbols");

  auto* table = app.add_subcommand("table", "Acceptance values for every word up to a length");
  table->add_option("file", path)->required();
  table->add_option("--max-len", max_len)->required();
  table->add_flag("--json", as_json);
  table->add_option("--sep", wo.sep);

  auto* compile = app.add_subcommand("compile", "mm1gqfa -> molm, or mo1gqfa/molm -> blm");
  compile->add_option("file", path)->required();
  compile->add_option("--to", target)->required()->check(CLI::IsMember({"molm", "blm"}));
  compile->add_option("-o,--output", output)->required();

  auto* build = app.add_subcommand("build", "Closure constructions and classical embeddings");
  build->add_option("construction", construction)
      ->required()
      ->check(CLI::IsMember({"complement", "mix", "product", "embed-pa", "embed-dfa"}));
  build->add_option("inputs", inputs)->required();
  build->add_option("--weights", weights, "Mixture weights for mix, comma separated")->delimiter(',');
  build->add_option("-o,--output", output)->required();

  auto* equiv = app.add_subcommand("equiv", "Decide whether two machines compute the same function");
  equiv->add_option("file1", path)->required();
  equiv->add_option("file2", path2)->required();
  equiv->add_option("--method", method)->check(CLI::IsMember({"direct", "blm", "brute"}));
  equiv->add_option("--k", k, "Length bound for --method brute (default (n1+n2)^2)");
  equiv->add_option("--tol", tol);
  equiv->add_flag("--json", as_json);
  equiv->add_option("--sep", wo.sep);

  auto* check = app.add_subcommand("check-language", "Bounded-error recognition check against a DFA");
  check->add_option("machine", path)->required();
  check->add_option("dfa", path2)->required();
  check->add_option("--lambda", lambda)->required();
  check->add_option("--epsilon", epsilon)->required();
  check->add_option("--max-len", max_len)->required();
  check->add_flag("--skip-empty", skip_empty, "Leave the empty word out of the check");
  check->add_flag("--json", as_json);
  check->add_option("--sep", wo.sep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) status = cmd_validate(ctx, path);
    if (*accept) status = cmd_accept(ctx, path, word, empty, as_json, wo);
    if (*table) status = cmd_table(ctx, path, max_len, as_json, wo);
    if (*compile) status = cmd_compile(ctx, path, target, output);
    if (*build) status = cmd_build(ctx, construction, inputs, weights, output);
    if (*equiv) status = cmd_equiv(ctx, path, path2, method, k, tol, as_json, wo);
    if (*check) status = cmd_check_language(ctx, path, path2, lambda, epsilon, max_len, skip_empty, as_json, wo);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownSymbolError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "internal consistency error: " << e.what() << "\n";
    return kConsistency;
  } catch (const EnumerationGuardError& e) {
    err << "error: " << e.what() << "\n";
    return kEnumerationGuard;
  } catch (const Error& e) {
    err << "validation failed: " << e.what() << "\n";
    return kValidation;
  }
  return status;
}

}  // namespace qfa::cli
