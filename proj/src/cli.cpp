#include "polykit/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "polykit/certificate.hpp"
#include "polykit/error.hpp"
#include "polykit/lifting.hpp"
#include "polykit/normal_form.hpp"
#include "polykit/splitting.hpp"
#include "polykit/syntax.hpp"
#include "polykit/workspace.hpp"

namespace polykit {

namespace {

namespace fs = std::filesystem;

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Inconclusive:
    case ErrorKind::BudgetExceeded:
      return kExitInconclusive;
    case ErrorKind::Verification:
    case ErrorKind::ContractViolation:
      return kExitFailed;
    default:
      return kExitUsage;
  }
}

struct Options {
  std::size_t budget = 0;
  std::string poly, morph, spec, expr, select_poly, select_morph, out_dir;
  std::optional<Dim> dim;
  bool cert = false;
};

// The polygraph a command works on: the one named with -p, or the only one.
PolygraphPtr pick_polygraph(const Workspace& ws, const Options& o) {
  if (!o.select_poly.empty()) return ws.polygraph(o.select_poly);
  if (ws.polygraph_names().size() != 1)
    throw Error(ErrorKind::UnresolvedReference,
                o.poly + " holds " + std::to_string(ws.polygraph_names().size()) +
                    " polygraphs; choose one with -p");
  return ws.polygraph(ws.polygraph_names().front());
}

const Morphism& pick_morphism(const Workspace& ws, const Options& o) {
  if (!o.select_morph.empty()) return ws.morphism(o.select_morph);
  if (ws.morphism_names().empty())
    throw Error(ErrorKind::UnresolvedReference, o.morph + " defines no morphism");
  return ws.morphism(ws.morphism_names().back());
}

Workspace load(std::initializer_list<std::string> files) {
  Workspace ws;
  for (const auto& f : files) ws.load_file(f);
  return ws;
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream o(path, std::ios::binary);
  if (!o) throw Error(ErrorKind::UnresolvedReference, "cannot write " + path.string());
  o << text;
}

std::string print_checks(const std::vector<Check>& cs, bool failures_only) {
  std::string out;
  for (const auto& c : cs)
    if (!failures_only || !c.ok)
      out += std::string(c.ok ? "  ok    " : "  FAIL  ") + c.equation + " at " + c.subject + " (" +
             c.method + ")\n";
  return out;
}

int cmd_validate(const Options& o, std::ostream& out) {
  Workspace ws = load({o.poly});
  for (const auto& n : ws.polygraph_names()) {
    auto p = ws.polygraph(n);
    out << "polygraph " << n << ": " << p->size() << " generators, dimension " << p->max_dim() << "\n";
    for (const auto& w : lint_polygraph(*p)) out << "  warning: " << w << "\n";
  }
  for (const auto& n : ws.morphism_names()) out << "morphism " << n << ": valid\n";
  return kExitOk;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  Workspace ws = load({o.poly});
  auto p = pick_polygraph(ws, o);
  out << print_cell(normalize(parse_cell(*p, o.expr, o.dim)).term()) << "\n";
  return kExitOk;
}

int cmd_weights(const Options& o, std::ostream& out) {
  Workspace ws = load({o.poly});
  auto p = pick_polygraph(ws, o);
  CellTerm x = parse_cell(*p, o.expr, o.dim);
  out << "dimension: " << x.dim() << "\n";
  for (const auto& [id, w] : weight_vector(x)) out << "weight " << id.name << ": " << w << "\n";
  out << "total weight: " << total_weight(x) << "\n";
  out << "thickness: " << thickness(x) << "\n";
  out << "size: " << size(x) << "\n";
  return kExitOk;
}

int cmd_check_idem(const Options& o, std::ostream& out) {
  Workspace ws = load({o.poly, o.morph});
  const Morphism& h = pick_morphism(ws, o);
  IdempotencyReport rep = is_idempotent(h, o.budget);
  switch (rep.verdict) {
    case EqVerdict::Equal:
      out << h.name() << " is idempotent\n";
      return kExitOk;
    case EqVerdict::Distinct:
      out << h.name() << " is not idempotent: " << rep.detail << "\n";
      return kExitFailed;
    case EqVerdict::Unknown:
      out << h.name() << ": undecided: " << rep.detail << "\n";
      return kExitInconclusive;
  }
  return kExitFailed;
}

int cmd_split(const Options& o, std::ostream& out) {
  Workspace ws = load({o.poly, o.morph});
  const Morphism& h = pick_morphism(ws, o);
  SplitResult res = split_idempotent(h.source(), h, o.dim, o.budget);
  std::string cert = split_certificate(res);
  if (!o.out_dir.empty()) {
    write_file(fs::path(o.out_dir) / (h.name() + ".cert.json"), cert);
    write_file(fs::path(o.out_dir) / (res.T->name() + ".poly"), print_polygraph(*res.T));
  }
  if (o.cert && o.out_dir.empty()) {
    out << cert;
  } else {
    out << print_polygraph(*res.T);
    out << "u:\n";
    for (const auto& g : res.T->all_generators())
      out << "  " << g->name << " -> " << print_cell(res.u.image(g->id())) << "\n";
    out << "r:\n";
    for (const auto& g : res.S->all_generators())
      if (res.r.assigned(g->id())) out << "  " << g->name << " -> " << print_cell(res.r.image(g->id())) << "\n";
    out << (res.verified() ? "verified\n" : "NOT verified\n");
  }
  return res.verified() ? kExitOk : kExitFailed;
}

int cmd_lift(const Options& o, std::ostream& out) {
  Workspace ws = load({o.spec});
  int code = kExitOk;
  std::size_t ran = 0;
  for (const auto& st : ws.statements()) {
    if (st.kind != Statement::Kind::Lift) continue;
    ++ran;
    const Morphism& f = ws.morphism(st.args[0]);
    LiftResult res = lift_generators(f.source(), f, ws.fibration(st.args[1], o.budget), o.budget);
    bool ok = true;
    for (const auto& c : res.checks) ok = ok && c.ok;
    out << "lift " << f.name() << " via " << st.args[1] << ": " << (ok ? "p.g = f verified" : "FAILED") << "\n";
    for (const auto& g : f.source()->all_generators())
      out << "  " << g->name << " -> " << print_cell(res.g.image(g->id())) << "\n";
    out << print_checks(res.checks, true);
    if (!ok) code = kExitFailed;
  }
  if (!ran) throw Error(ErrorKind::Syntax, o.spec + " contains no 'lift' statement");
  return code;
}

int cmd_iso(const Options& o, std::ostream& out) {
  Workspace ws = load({o.spec});
  int code = kExitOk;
  std::size_t ran = 0;
  for (const auto& st : ws.statements()) {
    if (st.kind != Statement::Kind::Iso) continue;
    ++ran;
    const Morphism& p = ws.morphism(st.args[0]);
    const Morphism& q = ws.morphism(st.args[1]);
    std::optional<Dim> dim = o.dim ? o.dim : st.dim;
    RetractIso iso = free_retract_iso(p.source(), p, q, ws.codomain(p.name()), dim, o.budget);
    if (o.cert) {
      out << iso_certificate(iso);
    } else {
      out << "iso " << p.name() << " " << q.name() << ": "
          << (iso.verified() ? "f and g inverse on generators" : "FAILED") << "\n";
      out << print_polygraph(*iso.split.T);
      out << "f:\n";
      for (const auto& g : iso.split.T->all_generators())
        out << "  " << g->name << " -> " << print_cell(iso.f.image(g->id())) << "\n";
    }
    if (!iso.verified()) code = kExitFailed;
  }
  if (!ran) throw Error(ErrorKind::Syntax, o.spec + " contains no 'iso' statement");
  return code;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.budget = default_budget();
  CLI::App app("Free strict higher categories: normal forms, idempotent splitting, lifting.",
               "polykit");
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "equality search budget (default: POLYKIT_BUDGET or 20000)");
  };
  auto* validate = app.add_subcommand("validate", "check a polygraph or workspace file");
  validate->add_option("poly", o.poly)->required();
  common(validate);

  auto* norm = app.add_subcommand("normalize", "print the normal form of a cell");
  auto* weights = app.add_subcommand("weights", "print weights, thickness and size of a cell");
  for (auto* c : {norm, weights}) {
    c->add_option("poly", o.poly)->required();
    c->add_option("expr", o.expr)->required();
    c->add_option("-p,--polygraph", o.select_poly, "polygraph to use when the file has several");
    c->add_option("--dim", o.dim, "dimension of the cell");
    common(c);
  }

  auto* idem = app.add_subcommand("check-idem", "check that a morphism is idempotent");
  auto* split = app.add_subcommand("split", "split an idempotent through a free complex");
  for (auto* c : {idem, split}) {
    c->add_option("poly", o.poly)->required();
    c->add_option("morph", o.morph)->required();
    c->add_option("-m,--morphism", o.select_morph, "morphism to use (default: the last one)");
    common(c);
  }
  split->add_option("-d,--dim", o.dim, "working dimension");
  split->add_option("-o,--out", o.out_dir, "directory for the certificate and T");
  split->add_flag("--cert", o.cert, "print the certificate");

  auto* lift = app.add_subcommand("lift", "run the lift statements of a workspace file");
  auto* iso = app.add_subcommand("iso", "run the iso statements of a workspace file");
  for (auto* c : {lift, iso}) {
    c->add_option("workspace", o.spec)->required();
    common(c);
  }
  iso->add_option("-d,--dim", o.dim, "working dimension");
  iso->add_flag("--cert", o.cert, "print a certificate");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*norm) return cmd_normalize(o, out);
    if (*weights) return cmd_weights(o, out);
    if (*idem) return cmd_check_idem(o, out);
    if (*split) return cmd_split(o, out);
    if (*lift) return cmd_lift(o, out);
    if (*iso) return cmd_iso(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace polykit
