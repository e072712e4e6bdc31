#include "pirpsi/analysis.hpp"
#include "pirpsi/construct.hpp"
#include "pirpsi/core.hpp"
#include "pirpsi/netsim.hpp"
#include "pirpsi/privacy.hpp"
#include "pirpsi/retrieve.hpp"
#include "pirpsi/storage.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace pirpsi;

int parse_msg_id(const std::string& tok) {
    if (tok.size() == 1 && tok[0] >= 'A' && tok[0] <= 'G') return tok[0] - 'A' + 1;
    if (tok.size() == 1 && tok[0] >= 'a' && tok[0] <= 'g') return tok[0] - 'a' + 1;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos == tok.size()) return v;
    } catch (const std::exception&) {
    }
    throw scheme_error("bad message id (want a letter A..G or an integer): " + tok);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        if (at == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, at - start));
        start = at + 1;
    }
}

std::pair<int, int> parse_si(const std::string& text) {
    const auto parts = split_list(text, ',');
    if (parts.size() != 2)
        throw scheme_error("side information takes two ids, e.g. --si B,C");
    return {parse_msg_id(parts[0]), parse_msg_id(parts[1])};
}

// Seeded obfuscation: relabel the first-half bit indexes of every non-demand
// message with one random permutation per message (applied to both queries,
// which preserves all cancellation structure) and shuffle the codeword order
// of each query.
void shuffle_code(code& c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int h = half_len(c.params.k);
    std::map<int, std::vector<int>> perm;
    for (int m = 1; m <= c.params.k; ++m) {
        if (m == c.params.demand) continue;
        std::vector<int> p(static_cast<std::size_t>(h));
        for (int i = 0; i < h; ++i) p[static_cast<std::size_t>(i)] = i + 1;
        std::shuffle(p.begin(), p.end(), rng);
        perm[m] = std::move(p);
    }
    auto apply = [&](query& q) {
        for (auto& cw : q.codewords) {
            codeword next;
            for (const auto& [m, i] : cw) {
                if (m == c.params.demand)
                    next[m] = i;
                else
                    next[m] = perm[m][static_cast<std::size_t>(i - 1)];
            }
            cw = std::move(next);
        }
        std::shuffle(q.codewords.begin(), q.codewords.end(), rng);
    };
    apply(c.query_n1);
    apply(c.query_n2);
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string out;
    out.reserve(bits.size());
    for (std::uint8_t b : bits) out.push_back(b ? '1' : '0');
    return out;
}

void print_rates(const std::vector<rate_row>& rows, bool as_json) {
    if (as_json) {
        std::string out = "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            if (i) out += ",";
            out += "{\"k\":" + std::to_string(r.k);
            out += ",\"rate_this_scheme\":\"" + std::to_string(r.rate_this_scheme.num) +
                   "/" + std::to_string(r.rate_this_scheme.den) + "\"";
            out += ",\"rate_mds_psi\":\"" + std::to_string(r.rate_mds_psi.num) + "/" +
                   std::to_string(r.rate_mds_psi.den) + "\"";
            out += ",\"rate_no_si\":\"" + std::to_string(r.rate_no_si.num) + "/" +
                   std::to_string(r.rate_no_si.den) + "\"";
            out += ",\"download_bits\":" + std::to_string(r.download_bits);
            out += ",\"demand_bits\":" + std::to_string(r.demand_bits) + "}";
        }
        out += "]";
        std::cout << out << "\n";
        return;
    }
    std::cout << "k   this-scheme   mds-psi   no-si     download  demand\n";
    for (const auto& r : rows) {
        auto frac = [](const rational& x) {
            return std::to_string(x.num) + "/" + std::to_string(x.den);
        };
        std::string k = std::to_string(r.k);
        k.resize(4, ' ');
        std::string a = frac(r.rate_this_scheme);
        a.resize(14, ' ');
        std::string b = frac(r.rate_mds_psi);
        b.resize(10, ' ');
        std::string c = frac(r.rate_no_si);
        c.resize(10, ' ');
        std::string d = std::to_string(r.download_bits);
        d.resize(10, ' ');
        std::cout << k << a << b << c << d << r.demand_bits << "\n";
    }
}

void print_audit(const audit_report& rep, bool as_json) {
    if (as_json) {
        std::cout << audit_to_json(rep) << "\n";
        return;
    }
    int failures = 0;
    for (const auto& e : rep.entries) {
        if (e.pass()) continue;
        ++failures;
        std::cout << "FAIL demand=" << e.demand << " si={" << e.si.first << ","
                  << e.si.second << "} case=" << e.case_id
                  << (e.structure_match ? "" : " structure-mismatch")
                  << (e.decodable ? "" : " undecodable")
                  << (e.note.empty() ? "" : " note=" + e.note) << "\n";
    }
    std::cout << (failures == 0 ? "all " : "FAILED: ") << rep.entries.size()
              << " triples " << (failures == 0 ? "pass" : "checked") << " (K="
              << rep.k << ", " << (rep.used_search ? "search" : "table")
              << " synthesis)";
    if (failures != 0) std::cout << ", " << failures << " failures";
    std::cout << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{
        "Two-database XOR private information retrieval with side information"};
    app.require_subcommand(1);

    // ---- build
    auto* build = app.add_subcommand(
        "build", "Construct the two database queries and save them as a code document");
    int b_k = 0;
    std::string b_demand, b_si, b_out, b_format = "text";
    std::uint64_t b_seed = 0;
    build->add_option("--k", b_k, "number of messages (>= 3)")
        ->required()
        ->check(CLI::Range(3, 20));
    auto* b_demand_opt =
        build->add_option("--demand", b_demand, "demand message (letter or id)");
    auto* b_si_opt = build->add_option(
        "--si", b_si, "side information pair, e.g. B,C (letters or ids)");
    b_demand_opt->needs(b_si_opt);
    b_si_opt->needs(b_demand_opt);
    build->add_option("--out", b_out, "output code document")->required();
    build->add_option("--format", b_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    auto* b_seed_opt = build->add_option(
        "--seed", b_seed, "shuffle codeword order and relabel byproduct indexes");
    build->callback([&] {
        code c;
        if (b_demand_opt->count()) {
            const auto si = parse_si(b_si);
            c.params = make_params(b_k, parse_msg_id(b_demand), si.first, si.second);
            c.query_n1 = build_query_n1(b_k);
            c.query_n2 = synthesize_n2(c.query_n1, b_k, c.params.demand, c.params.si);
        } else {
            c = build_canonical_code(b_k);
        }
        if (b_seed_opt->count()) shuffle_code(c, b_seed);
        save_code(c, b_out);
        if (b_format == "json") {
            std::cout << code_to_json(c) << "\n";
        } else {
            std::cout << "database 1 query (" << c.query_n1.codewords.size()
                      << " codewords):\n"
                      << render(c.query_n1) << "\n";
            std::cout << "database 2 query (" << c.query_n2.codewords.size()
                      << " codewords):\n"
                      << render(c.query_n2) << "\n";
            std::cout << "saved to " << b_out << "\n";
        }
    });

    // ---- answer
    auto* answer = app.add_subcommand(
        "answer", "Answer one database's query against a message store");
    std::string a_db, a_code, a_messages, a_out, a_format = "text";
    answer->add_option("--db", a_db, "which query to answer: n1 | n2")
        ->required()
        ->check(CLI::IsMember({"n1", "n2"}));
    answer->add_option("--code", a_code, "code document")->required();
    answer->add_option("--messages", a_messages, "message store file")->required();
    answer->add_option("--out", a_out, "output answer file")->required();
    answer->add_option("--format", a_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    answer->callback([&] {
        const code c = load_code(a_code);
        const message_store store = load_messages(a_messages);
        if (store.k != c.params.k)
            throw scheme_error("store and code disagree on the number of messages");
        const query& q = a_db == "n1" ? c.query_n1 : c.query_n2;
        const answer_vector ans = answer_query(store, q);
        write_file(a_out, answer_to_json(ans) + "\n");
        if (a_format == "json")
            std::cout << answer_to_json(ans) << "\n";
        else
            std::cout << ans.size() << " answer bits -> " << a_out << "\n";
    });

    // ---- decode
    auto* decode = app.add_subcommand(
        "decode", "Decode the demand message from the two database answers");
    std::string d_code, d_answers, d_si, d_out, d_format = "text";
    decode->add_option("--code", d_code, "code document")->required();
    decode->add_option("--answers", d_answers, "two answer files, comma-separated")
        ->required();
    decode->add_option("--si-bits", d_si, "side information bits (JSON)")->required();
    decode->add_option("--out", d_out, "output demand bits (JSON)")->required();
    decode->add_option("--format", d_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    decode->callback([&] {
        const code c = load_code(d_code);
        const auto files = split_list(d_answers, ',');
        if (files.size() != 2)
            throw scheme_error("--answers takes two files, e.g. a1.json,a2.json");
        const answer_vector ans1 = answer_from_json(read_file(files[0]));
        const answer_vector ans2 = answer_from_json(read_file(files[1]));
        const si_bits si = si_bits_from_json(read_file(d_si));
        const decode_result res = decode_demand(c, ans1, ans2, si);
        write_file(d_out, answer_to_json(res.demand_bits) + "\n");
        if (d_format == "json")
            std::cout << answer_to_json(res.demand_bits) << "\n";
        else
            std::cout << "demand message " << res.demand_bits.size() << " bits: "
                      << bits_to_string(res.demand_bits) << "\n";
    });

    // ---- audit
    auto* audit = app.add_subcommand(
        "audit", "Check every (demand, side information) triple for K messages");
    int au_k = 0;
    bool au_oracle = false;
    std::string au_format = "text";
    audit->add_option("--k", au_k, "number of messages")->required();
    audit->add_flag("--oracle", au_oracle,
                    "use the exhaustive search oracle instead of the case tables");
    audit->add_option("--format", au_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    audit->callback([&] {
        const audit_report rep = audit_privacy(au_k, au_oracle);
        print_audit(rep, au_format == "json");
        if (!rep.all_pass()) throw scheme_error("audit found failing triples");
    });

    // ---- rates
    auto* rates = app.add_subcommand(
        "rates", "Closed-form retrieval rates and download totals");
    int r_min = 0, r_max = 0;
    std::string r_format = "text";
    rates->add_option("--k-min", r_min, "first K")->required();
    rates->add_option("--k-max", r_max, "last K")->required();
    rates->add_option("--format", r_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    rates->callback([&] {
        print_rates(rate_table(r_min, r_max), r_format == "json");
    });

    // ---- serve
    auto* serve = app.add_subcommand(
        "serve", "Run one database server over a message store");
    std::string s_messages, s_endpoint;
    serve->add_option("--messages", s_messages, "message store file")->required();
    serve->add_option("--endpoint", s_endpoint, "host:port (port 0 picks one)")
        ->required();
    serve->callback([&] {
        const message_store store = load_messages(s_messages);
        net::tcp_server server(store, s_endpoint);
        std::cout << "serving " << store.k << " messages of " << store.message_len
                  << " bits on " << server.endpoint() << std::endl;
        server.wait();
    });

    // ---- fetch
    auto* fetch = app.add_subcommand(
        "fetch", "Retrieve the demand message from two database servers");
    std::string f_endpoints, f_demand, f_si, f_si_bits, f_format = "text";
    int f_k = 0;
    fetch->add_option("--endpoints", f_endpoints, "two host:port, comma-separated")
        ->required();
    fetch->add_option("--k", f_k, "number of messages")->required();
    fetch->add_option("--demand", f_demand, "demand message (letter or id)")
        ->required();
    fetch->add_option("--si", f_si, "side information pair, e.g. B,C")->required();
    fetch->add_option("--si-bits", f_si_bits, "side information bits (JSON)")
        ->required();
    fetch->add_option("--format", f_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    fetch->callback([&] {
        const auto eps = split_list(f_endpoints, ',');
        if (eps.size() != 2)
            throw scheme_error("--endpoints takes two host:port entries");
        const auto si = parse_si(f_si);
        const scheme_params params =
            make_params(f_k, parse_msg_id(f_demand), si.first, si.second);
        const si_bits bits = si_bits_from_json(read_file(f_si_bits));
        const net::fetch_result res = net::fetch(eps[0], eps[1], params, bits);
        if (f_format == "json")
            std::cout << answer_to_json(res.result.demand_bits) << "\n";
        else
            std::cout << "demand message " << res.result.demand_bits.size()
                      << " bits (downloaded " << res.downloaded_bits_db1 << "+"
                      << res.downloaded_bits_db2 << "): "
                      << bits_to_string(res.result.demand_bits) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pirpsi::scheme_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
