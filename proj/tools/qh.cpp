#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cache.hpp"
#include "qh/checks.hpp"
#include "qh/errors.hpp"
#include "qh/holonomy.hpp"
#include "qh/serialize.hpp"
#include "qh/skein_engine.hpp"

using namespace qh;

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct LinkArgs {
    std::string cf;
    std::string fraction;
};

void add_link_options(CLI::App* cmd, LinkArgs& args) {
    auto* c = cmd->add_option("--cf", args.cf, "continued fraction, e.g. 3,2 or [3,2]");
    auto* f = cmd->add_option("--fraction", args.fraction, "fraction p/q");
    c->excludes(f);
}

TwoBridgeLink link_from(const LinkArgs& args) {
    if (args.cf.empty() == args.fraction.empty()) throw InvalidInput("give exactly one of --cf or --fraction");
    if (!args.cf.empty()) return make_link(parse_cf(args.cf));
    Fraction fr = parse_fraction(args.fraction);
    return make_link(fraction_to_cf(fr.p, fr.q));
}

Start parse_start(const std::string& s) {
    if (s == "auto") return Start::Auto;
    if (s == "up") return Start::UP;
    if (s == "op") return Start::OP;
    throw InvalidInput("start must be auto, up or op");
}

json compute_record(const TwoBridgeLink& link, int j, Start start, bool canonical, const ResultCache& cache) {
    if (j < 0) throw InvalidInput("color must be nonnegative");
    Family f = resolve_start(link, start);
    std::string key = ResultCache::key(link.cf, j, f, canonical);
    if (auto hit = cache.load(key)) return *hit;
    ResultRecord r;
    r.cf = link.cf;
    r.fraction = link.fraction;
    r.color = j;
    r.start = f;
    r.normalized = canonical;
    r.components = link.components;
    r.value = eval_reduced(link, j, f == Family::UP ? Start::UP : Start::OP,
                           canonical ? Normalize::Canonical : Normalize::Raw);
    json out = record_to_json(r);
    cache.store(key, out);
    return out;
}

struct Specialization {
    char var = 0;
    int sign = 1;
    int power = 0;
};

int parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidInput("malformed " + what + ": " + s);
    return v;
}

Specialization parse_specialization(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq != 1) throw InvalidInput("specialization must look like s=1, a=q^2 or i=5");
    Specialization sp;
    sp.var = text[0];
    std::string rhs = text.substr(2);
    if (sp.var == 'i') {
        sp.power = parse_int(rhs, "specialization");
        return sp;
    }
    if (sp.var != 'a' && sp.var != 's') throw InvalidInput("only a, s and i can be specialized");
    if (!rhs.empty() && rhs[0] == '-') {
        sp.sign = -1;
        rhs = rhs.substr(1);
    }
    if (rhs == "1")
        sp.power = 0;
    else if (rhs == "q")
        sp.power = 1;
    else if (rhs.size() > 2 && rhs.compare(0, 2, "q^") == 0)
        sp.power = parse_int(rhs.substr(2), "specialization exponent");
    else
        throw InvalidInput("specialization value must be ±1, ±q or ±q^k: " + text);
    return sp;
}

QScalar specialize(QScalar v, const Specialization& sp, const TwoBridgeLink& link, int j) {
    if (sp.var == 'i') {
        if (link.components != 2) throw InvalidInput("i= applies to two-component links");
        return specialize_two_component(v, sp.power, j);
    }
    Substitution sub;
    if (sp.var == 'a')
        sub.a = SignedQPower{sp.sign, sp.power};
    else
        sub.s = SignedQPower{sp.sign, sp.power};
    return v.substitute(sub);
}

struct EvalArgs {
    LinkArgs link;
    int color = -1;
    std::string start = "auto";
    std::string normalize = "canonical";
    std::string format = "text";
    std::vector<std::string> specialize;
};

int cmd_eval(const EvalArgs& a) {
    TwoBridgeLink link = link_from(a.link);
    ResultCache cache = ResultCache::from_env();
    bool canonical = a.normalize == "canonical";
    json rec = compute_record(link, a.color, parse_start(a.start), canonical && a.specialize.empty(), cache);
    if (!a.specialize.empty()) {
        QScalar v = scalar_from_json(rec.at("value"));
        for (auto& s : a.specialize) v = specialize(v, parse_specialization(s), link, a.color);
        if (canonical && !v.is_zero()) v = v.canonicalize();
        rec["value"] = scalar_to_json(v);
        rec["normalized"] = canonical;
        rec["specialize"] = a.specialize;
    }
    if (a.format == "json")
        std::cout << rec.dump() << "\n";
    else
        std::cout << scalar_from_json(rec.at("value")).to_string() << "\n";
    return 0;
}

struct SequenceArgs {
    LinkArgs link;
    int max_color = -1;
    std::string out;
    std::string start = "auto";
    std::string normalize = "canonical";
    unsigned jobs = default_jobs();
};

int cmd_sequence(const SequenceArgs& a) {
    TwoBridgeLink link = link_from(a.link);
    if (a.max_color < 0) throw InvalidInput("--max-color must be nonnegative");
    Start start = parse_start(a.start);
    resolve_start(link, start);
    ResultCache cache = ResultCache::from_env();
    std::size_t n = static_cast<std::size_t>(a.max_color) + 1;
    std::vector<json> recs(n);
    parallel_for(n, a.jobs, [&](std::size_t i) {
        int j = static_cast<int>(n - 1 - i);
        recs[static_cast<std::size_t>(j)] = compute_record(link, j, start, a.normalize == "canonical", cache);
    });
    std::string text = json(recs).dump() + "\n";
    if (a.out.empty())
        std::cout << text;
    else
        write_file_atomic(a.out, text);
    return 0;
}

struct RecurrenceArgs {
    std::string in;
    int max_order = 4;
    int max_mdeg = 8;
    int validate = 5;
    bool a_free = false;
    std::size_t budget = 200000;
    std::string format = "text";
};

SequenceWindow load_window(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    json arr;
    try {
        arr = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("sequence file is not JSON: ") + e.what());
    }
    if (!arr.is_array() || arr.empty()) throw InvalidInput("sequence file must be a nonempty JSON array");
    std::vector<ResultRecord> recs;
    for (auto& r : arr) recs.push_back(record_from_json(r));
    std::sort(recs.begin(), recs.end(), [](const ResultRecord& x, const ResultRecord& y) { return x.color < y.color; });
    SequenceWindow w;
    w.link_id = format_cf(recs.front().cf);
    w.first = recs.front().color;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const ResultRecord& r = recs[i];
        if (!(r.cf == recs.front().cf) || r.start != recs.front().start || r.normalized != recs.front().normalized)
            throw InvalidInput("sequence file mixes links, starts or normalizations");
        if (r.color != w.first + static_cast<int>(i)) throw InvalidInput("sequence colors must be consecutive");
        QScalar v = r.value;
        if (v.num().has_s()) v = v.substitute(Substitution{std::nullopt, SignedQPower{1, 0}, false});
        w.values.push_back(std::move(v));
    }
    return w;
}

int cmd_recurrence(const RecurrenceArgs& a) {
    SequenceWindow w = load_window(a.in);
    GuessOptions opts;
    opts.d_max = a.max_order;
    opts.mdeg_max = a.max_mdeg;
    opts.holdout = a.validate;
    opts.a_free = a.a_free;
    opts.term_budget = a.budget;
    auto A = guess_recurrence(w, opts);
    std::optional<ValidationReport> rep;
    if (A && a.validate > 0) rep = validate(*A, w, a.validate);
    if (a.format == "json") {
        json out = {{"link", w.link_id},
                    {"window", {w.first, w.end() - 1}},
                    {"a_free_ansatz", a.a_free},
                    {"operator", A ? operator_to_json(*A) : json(nullptr)}};
        if (A) out["a_free"] = A->is_a_free();
        if (rep) out["validation"] = {{"pass", rep->pass}, {"checked", rep->checked}, {"message", rep->message}};
        std::cout << out.dump() << "\n";
    } else if (!A) {
        std::cout << "none found (order <= " << a.max_order << ", M-degree <= " << a.max_mdeg
                  << (a.a_free ? ", a-free" : "") << ")\n";
    } else {
        std::cout << "order " << A->order << ", M-degree " << A->mdeg << ", a-free " << (A->is_a_free() ? "yes" : "no")
                  << "\n"
                  << A->to_string() << "\n";
        if (rep) std::cout << "validation: " << (rep->pass ? "pass" : "FAIL") << " (" << rep->message << ")\n";
    }
    return rep && !rep->pass ? 1 : 0;
}

struct CorpusArgs {
    int max_crossings = 0;
    std::vector<std::string> checks;
    int max_color = -1;
    unsigned jobs = default_jobs();
};

const std::vector<std::string> kAllChecks = {"homfly", "jones", "amphichiral", "integrality", "determinant", "nested-sum"};

struct Task {
    std::size_t check;
    std::size_t link;
    int color;
};

int cmd_corpus(const CorpusArgs& a) {
    std::vector<std::string> checks = a.checks.empty() ? kAllChecks : a.checks;
    std::vector<TwoBridgeLink> links = enumerate_corpus(a.max_crossings);
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < checks.size(); ++c) {
        const std::string& name = checks[c];
        int lo = 1, hi = 1;
        if (name == "nested-sum") lo = 0, hi = 3;
        if (name == "integrality") lo = 0, hi = 4;
        if (name == "determinant" || name == "amphichiral") lo = 1, hi = 3;
        if (a.max_color >= 0 && name != "homfly" && name != "jones") hi = a.max_color;
        for (std::size_t l = 0; l < links.size(); ++l)
            for (int j = lo; j <= hi; ++j) tasks.push_back({c, l, j});
    }
    std::vector<CheckOutcome> results(tasks.size());
    parallel_for(tasks.size(), a.jobs, [&](std::size_t i) {
        const Task& t = tasks[i];
        const std::string& name = checks[t.check];
        const TwoBridgeLink& L = links[t.link];
        try {
            if (name == "homfly")
                results[i] = check_homfly(L);
            else if (name == "jones")
                results[i] = check_jones(L);
            else if (name == "amphichiral")
                results[i] = check_amphichiral(L, t.color);
            else if (name == "integrality")
                results[i] = check_integrality(L, t.color);
            else if (name == "determinant")
                results[i] = check_determinant(L, t.color);
            else
                results[i] = check_nested_sum(L, t.color);
        } catch (const std::exception& e) {
            results[i] = {false, std::string("error: ") + e.what()};
        }
    });
    json summary = {{"max_crossings", a.max_crossings}, {"links", links.size()}};
    json per = json::object();
    bool pass = true;
    for (std::size_t c = 0; c < checks.size(); ++c) per[checks[c]] = {{"cases", 0}, {"skipped", 0}, {"failures", json::array()}};
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        json& slot = per[checks[t.check]];
        const CheckOutcome& r = results[i];
        if (r.ok && r.detail.rfind("skipped", 0) == 0) {
            slot["skipped"] = slot["skipped"].get<int>() + 1;
            continue;
        }
        slot["cases"] = slot["cases"].get<int>() + 1;
        if (!r.ok) {
            pass = false;
            std::string cf = format_cf(links[t.link].cf);
            slot["failures"].push_back({{"cf", cf}, {"color", t.color}, {"detail", r.detail}});
            std::cerr << "FAIL " << checks[t.check] << " " << cf << " j=" << t.color << ": " << r.detail << "\n";
        }
    }
    summary["checks"] = per;
    summary["pass"] = pass;
    std::cout << summary.dump() << "\n";
    return pass ? 0 : 1;
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const InvalidInput*>(&e)) return 2;
    if (dynamic_cast<const UnclosableFamily*>(&e)) return 3;
    if (dynamic_cast<const ResourceBudget*>(&e)) return 4;
    if (dynamic_cast<const WindowTooShort*>(&e)) return 5;
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colored HOMFLY polynomials of 2-bridge links"};
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "evaluate the reduced colored invariant");
    add_link_options(eval, ev.link);
    eval->add_option("--color", ev.color, "color j")->required()->check(CLI::NonNegativeNumber);
    eval->add_option("--start", ev.start, "start family")->check(CLI::IsMember({"auto", "up", "op"}));
    eval->add_option("--normalize", ev.normalize)->check(CLI::IsMember({"canonical", "raw"}));
    eval->add_option("--format", ev.format)->check(CLI::IsMember({"text", "json"}));
    eval->add_option("--specialize", ev.specialize, "s=1, a=q^2, i=5 ...");

    SequenceArgs sq;
    auto* seq = app.add_subcommand("sequence", "write the colors 0..J as a JSON array");
    add_link_options(seq, sq.link);
    seq->add_option("--max-color", sq.max_color)->required()->check(CLI::NonNegativeNumber);
    seq->add_option("--out", sq.out, "output file (default: standard output)");
    seq->add_option("--start", sq.start)->check(CLI::IsMember({"auto", "up", "op"}));
    seq->add_option("--normalize", sq.normalize)->check(CLI::IsMember({"canonical", "raw"}));
    seq->add_option("--jobs", sq.jobs)->check(CLI::PositiveNumber);

    RecurrenceArgs rc;
    auto* rec = app.add_subcommand("recurrence", "guess and validate a recurrence for a sequence file");
    rec->add_option("--in", rc.in)->required();
    rec->add_option("--max-order", rc.max_order)->check(CLI::NonNegativeNumber);
    rec->add_option("--max-mdeg", rc.max_mdeg)->check(CLI::NonNegativeNumber);
    rec->add_option("--validate", rc.validate, "held-out terms")->check(CLI::NonNegativeNumber);
    rec->add_flag("--a-free", rc.a_free, "restrict coefficients to q only");
    rec->add_option("--budget", rc.budget, "term budget for intermediate polynomials")->check(CLI::PositiveNumber);
    rec->add_option("--format", rc.format)->check(CLI::IsMember({"text", "json"}));

    CorpusArgs cp;
    auto* corpus = app.add_subcommand("corpus", "run cross-checks over all 2-bridge links up to a crossing number");
    corpus->add_option("--max-crossings", cp.max_crossings)->required()->check(CLI::Range(1, 16));
    corpus->add_option("--checks", cp.checks)->delimiter(',')->check(CLI::IsMember(kAllChecks));
    corpus->add_option("--max-color", cp.max_color)->check(CLI::NonNegativeNumber);
    corpus->add_option("--jobs", cp.jobs)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*eval) return cmd_eval(ev);
        if (*seq) return cmd_sequence(sq);
        if (*rec) return cmd_recurrence(rc);
        if (*corpus) return cmd_corpus(cp);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    }
    return 0;
}
