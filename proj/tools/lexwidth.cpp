// Command line front end: classify machines and grammars, measure widths,
// analyze communication specs, emit the undecidability reductions.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexwidth/lexwidth.hpp"

using nlohmann::json;
using namespace lexwidth;

namespace {

constexpr int kSchemaVersion = 1;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

std::string quoted_word(const Poset& p, const Word& w) {
    return "\"" + format_word(p, w) + "\"";
}

json word_json(const Poset& p, const Word& w) { return format_word(p, w); }

json words_json(const Poset& p, const std::set<Word>& ws) {
    json arr = json::array();
    for (const auto& w : ws) arr.push_back(word_json(p, w));
    return arr;
}

int run_classify_nfa(const std::string& nfa_path, const std::string& order_path, bool as_json) {
    Poset order = Poset::parse(read_file(order_path));
    Nfa machine = nfa_parse(read_file(nfa_path), order);
    Verdict verdict = classify_nfa(machine, order);
    if (as_json) {
        json out{{"schema", kSchemaVersion}, {"verdict", to_string(verdict.kind)}};
        if (verdict.empty_language) out["empty_language"] = true;
        if (verdict.witness) {
            const auto& w = *verdict.witness;
            out["state"] = w.state;
            out["w1"] = word_json(order, w.w1);
            out["w2"] = word_json(order, w.w2);
            out["u"] = word_json(order, w.access_in);
            out["v"] = word_json(order, w.access_out);
        }
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "verdict: " << to_string(verdict.kind) << '\n';
        if (verdict.empty_language) std::cout << "note: language is empty\n";
        if (verdict.witness) {
            const auto& w = *verdict.witness;
            std::cout << "state: " << w.state << '\n'
                      << "w1: " << quoted_word(order, w.w1) << '\n'
                      << "w2: " << quoted_word(order, w.w2) << '\n'
                      << "u: " << quoted_word(order, w.access_in) << '\n'
                      << "v: " << quoted_word(order, w.access_out) << '\n';
        }
    }
    return 0;
}

int run_width(const std::string& nfa_path, const std::string& order_path, int max_len,
              bool as_json) {
    Poset order = Poset::parse(read_file(order_path));
    Nfa machine = nfa_parse(read_file(nfa_path), order);
    WidthProfile profile = width_profile(machine, order, max_len);
    if (as_json) {
        json rows = json::array();
        for (const auto& row : profile.rows)
            rows.push_back({{"n", row.n},
                            {"slice", row.slice_size},
                            {"width", row.width},
                            {"witness", words_json(order, row.witness)}});
        std::cout << json{{"schema", kSchemaVersion},
                          {"rows", rows},
                          {"eps_hat", profile.eps_hat}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "n\tslice\twidth\n";
        for (const auto& row : profile.rows)
            std::cout << row.n << '\t' << row.slice_size << '\t' << row.width << '\n';
        std::cout << "eps_hat: " << profile.eps_hat << '\n';
    }
    return 0;
}

int run_classify_cfg(const std::string& cfg_path, const std::string& order_path, int depth,
                     bool as_json) {
    Poset order = Poset::parse(read_file(order_path));
    Cfg grammar = cfg_parse(read_file(cfg_path), order);
    if (depth <= 0) depth = default_cfg_depth(grammar);
    CfgVerdict verdict = classify_cfg_bounded(grammar, order, depth);
    if (as_json) {
        json out{{"schema", kSchemaVersion},
                 {"verdict", to_string(verdict.kind)},
                 {"depth", verdict.depth}};
        if (verdict.empty_language) out["empty_language"] = true;
        if (verdict.witness) {
            const auto& w = *verdict.witness;
            out["nonterminal"] = w.nonterminal;
            out["kind"] =
                w.source == CfgVerdict::Source::LeftPair ? "left-pair" : "right-pair-fixed-left";
            out["w1"] = word_json(order, w.w1);
            out["w2"] = word_json(order, w.w2);
            if (w.source == CfgVerdict::Source::RightPairFixedLeft)
                out["fixed_left"] = word_json(order, w.fixed_left);
            out["u"] = word_json(order, w.access_left);
            out["u2"] = word_json(order, w.access_right);
            out["v"] = word_json(order, w.terminal_yield);
        }
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "verdict: " << to_string(verdict.kind);
        if (verdict.kind == CfgVerdict::Kind::NoWitnessUpTo) std::cout << ' ' << verdict.depth;
        std::cout << '\n';
        if (verdict.empty_language) std::cout << "note: language is empty\n";
        if (verdict.witness) {
            const auto& w = *verdict.witness;
            std::cout << "nonterminal: " << w.nonterminal << '\n'
                      << "kind: "
                      << (w.source == CfgVerdict::Source::LeftPair ? "left-pair"
                                                                   : "right-pair-fixed-left")
                      << '\n'
                      << "pair: " << quoted_word(order, w.w1) << ' ' << quoted_word(order, w.w2)
                      << '\n';
            if (w.source == CfgVerdict::Source::RightPairFixedLeft)
                std::cout << "fixed left: " << quoted_word(order, w.fixed_left) << '\n';
        }
    }
    return 0;
}

int run_classify_nfta(const std::string& nfta_path, const std::string& order_path,
                      int height_bound, bool as_json) {
    Poset order = Poset::parse(read_file(order_path));
    ParsedNfta parsed = nfta_parse(read_file(nfta_path), order);
    TreeVerdict verdict = classify_nfta(parsed.automaton, parsed.alphabet, height_bound);
    if (as_json) {
        json out{{"schema", kSchemaVersion},
                 {"verdict", to_string(verdict.kind)},
                 {"height_bound", verdict.height_bound}};
        if (verdict.empty_language) out["empty_language"] = true;
        if (!verdict.state.empty()) out["state"] = verdict.state;
        if (verdict.trousers_context)
            out["trousers"] = tree_format(*verdict.trousers_context, parsed.alphabet);
        if (verdict.loop_pair) {
            out["context1"] = tree_format(verdict.loop_pair->first, parsed.alphabet);
            out["context2"] = tree_format(verdict.loop_pair->second, parsed.alphabet);
        }
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "verdict: " << to_string(verdict.kind);
        if (verdict.kind == TreeVerdict::Kind::PolynomialUpToBound)
            std::cout << ' ' << verdict.height_bound;
        std::cout << '\n';
        if (verdict.empty_language) std::cout << "note: language is empty\n";
        if (!verdict.state.empty()) std::cout << "state: " << verdict.state << '\n';
        if (verdict.trousers_context)
            std::cout << "trousers: " << tree_format(*verdict.trousers_context, parsed.alphabet)
                      << '\n';
        if (verdict.loop_pair)
            std::cout << "context pair: " << tree_format(verdict.loop_pair->first, parsed.alphabet)
                      << "  " << tree_format(verdict.loop_pair->second, parsed.alphabet) << '\n';
    }
    return 0;
}

int run_tree_width(const std::string& nfta_path, const std::string& order_path, int max_height,
                   bool as_json) {
    Poset order = Poset::parse(read_file(order_path));
    ParsedNfta parsed = nfta_parse(read_file(nfta_path), order);
    Nfta reduced = nfta_reduce(parsed.automaton);
    TreeWidthProfile profile =
        tree_width_profile(reduced, parsed.alphabet, max_height, std::max(max_height, 5));
    if (as_json) {
        json rows = json::array();
        for (const auto& row : profile.rows) {
            json witness = json::array();
            for (const auto& t : row.witness) witness.push_back(tree_format(t, parsed.alphabet));
            rows.push_back({{"height", row.height},
                            {"slice", row.slice_size},
                            {"width", row.width},
                            {"witness", witness}});
        }
        std::cout << json{{"schema", kSchemaVersion},
                          {"rows", rows},
                          {"eps_hat", profile.eps_hat}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "height\tslice\twidth\n";
        for (const auto& row : profile.rows)
            std::cout << row.height << '\t' << row.slice_size << '\t' << row.width << '\n';
        std::cout << "eps_hat: " << profile.eps_hat << '\n';
    }
    return 0;
}

int run_infoflow(const std::string& spec_path, const std::string& alice_csv,
                 const std::string& bob_csv, const std::string& ordered_party, int max_len,
                 bool as_json) {
    ChannelSpec cs;
    cs.alice_letters = detail::split_csv(alice_csv);
    cs.bob_letters = detail::split_csv(bob_csv);
    if (ordered_party == "alice")
        cs.ordered_party = Party::Alice;
    else if (ordered_party == "bob")
        cs.ordered_party = Party::Bob;
    else
        throw Error("--ordered-party must be alice or bob");
    Poset order = build_infoflow_order(cs.alice_letters, cs.bob_letters, cs.ordered_party);
    cs.spec = nfa_parse(read_file(spec_path), order);
    FlowReport report = analyze_spec(cs, max_len);
    if (as_json) {
        json leak = json::array();
        for (const auto& row : report.leakage)
            leak.push_back(
                {{"n", row.n}, {"slice", row.slice_size}, {"width", row.width}, {"bits", row.bits}});
        json out{{"schema", kSchemaVersion},
                 {"verdict", to_string(report.verdict)},
                 {"growth", to_string(report.underlying.kind)},
                 {"leakage", leak}};
        if (report.underlying.witness) {
            const auto& w = *report.underlying.witness;
            out["witness"] = {{"state", w.state},
                              {"w1", word_json(order, w.w1)},
                              {"w2", word_json(order, w.w2)},
                              {"u", word_json(order, w.access_in)},
                              {"v", word_json(order, w.access_out)}};
            out["witness_transcripts"] = words_json(order, report.witness_transcripts);
        }
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "verdict: " << to_string(report.verdict) << '\n';
        std::cout << "n\tslice\twidth\tbits\n";
        for (const auto& row : report.leakage)
            std::cout << row.n << '\t' << row.slice_size << '\t' << row.width << '\t' << row.bits
                      << '\n';
        if (!report.witness_transcripts.empty()) {
            std::cout << "witness transcripts:\n";
            for (const auto& w : report.witness_transcripts)
                std::cout << "  " << quoted_word(order, w) << '\n';
        }
    }
    return 0;
}

int run_reduce(const std::string& kind, const std::string& cfg_path, const std::string& cfg2_path,
               const std::string& order_path, const std::string& letters_csv,
               const std::string& out_cfg, const std::string& out_order) {
    if (kind == "intersection-to-chain") {
        if (cfg2_path.empty() || letters_csv.empty())
            throw Error("intersection-to-chain requires --cfg2 and --letters");
        auto letters = detail::split_csv(letters_csv);
        Poset base = Poset::trivial(letters);
        Cfg g1 = cfg_parse(read_file(cfg_path), base);
        Cfg g2 = cfg_parse(read_file(cfg2_path), base);
        auto [reduced, order] = reduce_intersection_to_chain(g1, g2, letters);
        write_file(out_cfg, cfg_format(reduced));
        write_file(out_order, order.format());
    } else if (kind == "chain-to-expantichain") {
        if (order_path.empty()) throw Error("chain-to-expantichain requires --order");
        Poset base = Poset::parse(read_file(order_path));
        Cfg g = cfg_parse(read_file(cfg_path), base);
        auto [reduced, order] = reduce_chain_to_expantichain(g, base);
        write_file(out_cfg, cfg_format(reduced));
        write_file(out_order, order.format());
    } else {
        throw Error("--kind must be intersection-to-chain or chain-to-expantichain");
    }
    std::cout << "wrote " << out_cfg << " and " << out_order << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"antichain growth classification over partially ordered alphabets"};
    app.require_subcommand(1);

    std::string nfa_path, order_path, cfg_path, cfg2_path, nfta_path, spec_path;
    std::string alice_csv, bob_csv, ordered_party = "bob", kind, letters_csv;
    std::string out_cfg = "reduced.cfg", out_order = "reduced.ord";
    int max_len = 8, depth = 0, height_bound = 8, max_height = 4;
    bool as_json = false;

    auto* c_nfa = app.add_subcommand("classify-nfa", "polynomial/exponential verdict for an NFA");
    c_nfa->add_option("--nfa", nfa_path, "NFA file")->required();
    c_nfa->add_option("--order", order_path, "order file")->required();
    c_nfa->add_flag("--json", as_json, "machine-readable output");

    auto* c_width = app.add_subcommand("width", "per-length widths of an NFA language");
    c_width->add_option("--nfa", nfa_path, "NFA file")->required();
    c_width->add_option("--order", order_path, "order file")->required();
    c_width->add_option("--max-len", max_len, "largest length to measure")->required();
    c_width->add_flag("--json", as_json, "machine-readable output");

    auto* c_cfg = app.add_subcommand("classify-cfg", "bounded witness search for a CFG");
    c_cfg->add_option("--cfg", cfg_path, "grammar file")->required();
    c_cfg->add_option("--order", order_path, "order file")->required();
    c_cfg->add_option("--depth", depth, "spine depth bound (default 2|N|+2)");
    c_cfg->add_flag("--json", as_json, "machine-readable output");

    auto* c_nfta = app.add_subcommand("classify-nfta", "tree trichotomy verdict for an NFTA");
    c_nfta->add_option("--nfta", nfta_path, "NFTA file")->required();
    c_nfta->add_option("--order", order_path, "order file")->required();
    c_nfta->add_option("--height-bound", height_bound, "unary loop sample height bound");
    c_nfta->add_flag("--json", as_json, "machine-readable output");

    auto* c_twidth = app.add_subcommand("tree-width", "per-height widths of a tree language");
    c_twidth->add_option("--nfta", nfta_path, "NFTA file")->required();
    c_twidth->add_option("--order", order_path, "order file")->required();
    c_twidth->add_option("--max-height", max_height, "largest height to measure")->required();
    c_twidth->add_flag("--json", as_json, "machine-readable output");

    auto* c_flow = app.add_subcommand("infoflow", "safe/dangerous channel classification");
    c_flow->add_option("--spec", spec_path, "transcript NFA file")->required();
    c_flow->add_option("--alice", alice_csv, "comma-separated Alice letters")->required();
    c_flow->add_option("--bob", bob_csv, "comma-separated Bob letters")->required();
    c_flow->add_option("--ordered-party", ordered_party, "alice|bob (default bob)");
    c_flow->add_option("--max-len", max_len, "leakage profile length");
    c_flow->add_flag("--json", as_json, "machine-readable output");

    auto* c_reduce = app.add_subcommand("reduce", "emit a hardness reduction grammar and order");
    c_reduce->add_option("--kind", kind, "intersection-to-chain|chain-to-expantichain")
        ->required();
    c_reduce->add_option("--cfg", cfg_path, "grammar file")->required();
    c_reduce->add_option("--cfg2", cfg2_path, "second grammar (intersection-to-chain)");
    c_reduce->add_option("--order", order_path, "order file (chain-to-expantichain)");
    c_reduce->add_option("--letters", letters_csv, "base letters (intersection-to-chain)");
    c_reduce->add_option("--out-cfg", out_cfg, "output grammar path");
    c_reduce->add_option("--out-order", out_order, "output order path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_nfa->parsed()) return run_classify_nfa(nfa_path, order_path, as_json);
        if (c_width->parsed()) return run_width(nfa_path, order_path, max_len, as_json);
        if (c_cfg->parsed()) return run_classify_cfg(cfg_path, order_path, depth, as_json);
        if (c_nfta->parsed())
            return run_classify_nfta(nfta_path, order_path, height_bound, as_json);
        if (c_twidth->parsed()) return run_tree_width(nfta_path, order_path, max_height, as_json);
        if (c_flow->parsed())
            return run_infoflow(spec_path, alice_csv, bob_csv, ordered_party, max_len, as_json);
        if (c_reduce->parsed())
            return run_reduce(kind, cfg_path, cfg2_path, order_path, letters_csv, out_cfg,
                              out_order);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
