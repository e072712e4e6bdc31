#include "pirpsi/storage.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace pirpsi {

namespace {

using nlohmann::json;

json query_to_json(const query& q) {
    json rows = json::array();
    for (const auto& cw : q.codewords) {
        json terms = json::array();
        for (const auto& [m, i] : cw) terms.push_back(json::array({m, i}));
        rows.push_back(std::move(terms));
    }
    return rows;
}

query query_from_json(const json& rows) {
    if (!rows.is_array()) throw scheme_error("query must be an array");
    query q;
    for (const auto& terms : rows) {
        if (!terms.is_array() || terms.empty())
            throw scheme_error("codeword must be a nonempty array");
        codeword cw;
        for (const auto& t : terms) {
            if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() ||
                !t[1].is_number_integer())
                throw scheme_error("term must be a [message_id, bit_index] pair");
            const int m = t[0].get<int>();
            const int i = t[1].get<int>();
            if (cw.count(m)) throw scheme_error("duplicate message in codeword");
            cw[m] = i;
        }
        q.codewords.push_back(std::move(cw));
    }
    return q;
}

// Document-level bit-index bounds: demand bits may use the whole message,
// every other message only its first half.
void check_index_bounds(const query& q, const scheme_params& p) {
    const int l = msg_len(p.k);
    const int h = half_len(p.k);
    for (const auto& cw : q.codewords) {
        for (const auto& [m, i] : cw) {
            const int limit = m == p.demand ? l : h;
            if (i < 1 || i > limit)
                throw scheme_error("bit index " + std::to_string(i) +
                                   " out of bounds for message " + std::to_string(m));
        }
    }
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

}  // namespace

std::string code_to_json(const code& c) {
    c.params.validate();
    json doc;
    doc["format_version"] = code_document_version;
    doc["k"] = c.params.k;
    doc["demand"] = c.params.demand;
    doc["si"] = json::array({c.params.si.first, c.params.si.second});
    doc["queries"] = json::array({query_to_json(c.query_n1), query_to_json(c.query_n2)});
    return doc.dump(2);
}

code code_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw scheme_error(std::string("malformed code document: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw scheme_error("code document must be an object");
        if (!doc.contains("format_version") ||
            doc["format_version"].get<int>() != code_document_version)
            throw scheme_error("unsupported code document version");
        for (const char* field : {"k", "demand", "si", "queries"})
            if (!doc.contains(field))
                throw scheme_error(std::string("code document missing field: ") + field);
        const int k = doc["k"].get<int>();
        const int demand = doc["demand"].get<int>();
        const auto& si = doc["si"];
        if (!si.is_array() || si.size() != 2)
            throw scheme_error("si must be a pair");
        code c;
        c.params = make_params(k, demand, si[0].get<int>(), si[1].get<int>());
        const auto& queries = doc["queries"];
        if (!queries.is_array() || queries.size() != 2)
            throw scheme_error("queries must hold one entry per database");
        c.query_n1 = query_from_json(queries[0]);
        c.query_n2 = query_from_json(queries[1]);
        validate_query(c.query_n1, k);
        validate_query(c.query_n2, k);
        check_index_bounds(c.query_n1, c.params);
        check_index_bounds(c.query_n2, c.params);
        return c;
    } catch (const json::exception& e) {
        throw scheme_error(std::string("malformed code document: ") + e.what());
    }
}

void save_code(const code& c, std::ostream& out) {
    out << code_to_json(c) << '\n';
    if (!out) throw scheme_error("failed to write code document");
}

void save_code(const code& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scheme_error("cannot open for writing: " + path);
    save_code(c, out);
}

code load_code(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return code_from_json(buf.str());
}

code load_code(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw scheme_error("cannot open: " + path);
    return load_code(in);
}

std::vector<std::uint8_t> messages_to_bytes(const message_store& store) {
    store.validate();
    std::vector<std::uint8_t> out;
    out.push_back('P');
    out.push_back('M');
    out.push_back('S');
    out.push_back('G');
    put_u16(out, static_cast<std::uint16_t>(store.k));
    put_u32(out, static_cast<std::uint32_t>(store.message_len));
    const int row_bytes = (store.message_len + 7) / 8;
    for (const auto& row : store.bits) {
        std::vector<std::uint8_t> packed(static_cast<std::size_t>(row_bytes), 0);
        for (int i = 0; i < store.message_len; ++i)
            if (row[static_cast<std::size_t>(i)])
                packed[static_cast<std::size_t>(i / 8)] |=
                    static_cast<std::uint8_t>(0x80u >> (i % 8));
        out.insert(out.end(), packed.begin(), packed.end());
    }
    return out;
}

message_store messages_from_bytes(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 10 || bytes[0] != 'P' || bytes[1] != 'M' ||
        bytes[2] != 'S' || bytes[3] != 'G')
        throw scheme_error("not a message file (bad magic)");
    message_store store;
    store.k = (bytes[4] << 8) | bytes[5];
    store.message_len = static_cast<int>((static_cast<std::uint32_t>(bytes[6]) << 24) |
                                         (static_cast<std::uint32_t>(bytes[7]) << 16) |
                                         (static_cast<std::uint32_t>(bytes[8]) << 8) |
                                         static_cast<std::uint32_t>(bytes[9]));
    if (store.k < 1 || store.message_len < 1)
        throw scheme_error("message file with empty dimensions");
    const std::size_t row_bytes = static_cast<std::size_t>((store.message_len + 7) / 8);
    const std::size_t want = 10 + static_cast<std::size_t>(store.k) * row_bytes;
    if (bytes.size() != want)
        throw scheme_error("message file size mismatch: have " +
                           std::to_string(bytes.size()) + " bytes, want " +
                           std::to_string(want));
    store.bits.resize(static_cast<std::size_t>(store.k));
    for (int m = 0; m < store.k; ++m) {
        auto& row = store.bits[static_cast<std::size_t>(m)];
        row.resize(static_cast<std::size_t>(store.message_len));
        const std::size_t base = 10 + static_cast<std::size_t>(m) * row_bytes;
        for (int i = 0; i < store.message_len; ++i)
            row[static_cast<std::size_t>(i)] =
                (bytes[base + static_cast<std::size_t>(i / 8)] >> (7 - i % 8)) & 1;
    }
    store.validate();
    return store;
}

void save_messages(const message_store& store, const std::string& path) {
    const auto bytes = messages_to_bytes(store);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scheme_error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw scheme_error("failed to write message file");
}

message_store load_messages(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw scheme_error("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return messages_from_bytes(bytes);
}

query parse_query_text(const std::string& text) {
    query q;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && line[start] == ' ') ++start;
        line.erase(0, start);
        if (line.empty()) continue;
        codeword cw;
        std::size_t pos = 0;
        while (pos < line.size()) {
            int msg = 0;
            if (line[pos] >= 'A' && line[pos] <= 'G') {
                msg = line[pos] - 'A' + 1;
                ++pos;
            } else if (line[pos] == 'M') {
                ++pos;
                std::size_t digits = 0;
                int id = 0;
                while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
                    id = id * 10 + (line[pos] - '0');
                    ++pos;
                    ++digits;
                }
                if (digits == 0 || pos >= line.size() || line[pos] != '_')
                    throw scheme_error("malformed term in: " + line);
                ++pos;
                msg = id;
            } else {
                throw scheme_error(std::string("unknown message letter '") +
                                   line[pos] + "' in: " + line);
            }
            std::size_t digits = 0;
            int index = 0;
            while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
                index = index * 10 + (line[pos] - '0');
                ++pos;
                ++digits;
            }
            if (digits == 0)
                throw scheme_error("missing bit index in: " + line);
            if (cw.count(msg))
                throw scheme_error("duplicate message in codeword: " + line);
            cw[msg] = index;
            if (pos < line.size()) {
                if (line[pos] != '+')
                    throw scheme_error("expected '+' between terms in: " + line);
                ++pos;
                if (pos == line.size())
                    throw scheme_error("trailing '+' in: " + line);
            }
        }
        if (cw.empty()) throw scheme_error("empty codeword line");
        q.codewords.push_back(std::move(cw));
    }
    if (q.codewords.empty()) throw scheme_error("no codewords in text");
    return q;
}

std::string answer_to_json(const answer_vector& ans) {
    json doc;
    doc["bits"] = json::array();
    for (std::uint8_t b : ans) doc["bits"].push_back(static_cast<int>(b));
    return doc.dump();
}

answer_vector answer_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        if (!doc.is_object() || !doc.contains("bits") || !doc["bits"].is_array())
            throw scheme_error("answer document needs a \"bits\" array");
        answer_vector ans;
        for (const auto& b : doc["bits"]) {
            const int v = b.get<int>();
            if (v != 0 && v != 1) throw scheme_error("answer bits must be 0 or 1");
            ans.push_back(static_cast<std::uint8_t>(v));
        }
        return ans;
    } catch (const json::exception& e) {
        throw scheme_error(std::string("malformed answer document: ") + e.what());
    }
}

std::string si_bits_to_json(const si_bits& si) {
    json rows = json::object();
    for (const auto& [m, bits] : si.rows) {
        json arr = json::array();
        for (std::uint8_t b : bits) arr.push_back(static_cast<int>(b));
        rows[std::to_string(m)] = std::move(arr);
    }
    json doc;
    doc["rows"] = std::move(rows);
    return doc.dump();
}

si_bits si_bits_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_object())
            throw scheme_error("si document needs a \"rows\" object");
        si_bits si;
        for (const auto& [key, arr] : doc["rows"].items()) {
            const int m = std::stoi(key);
            if (m < 1) throw scheme_error("si message ids must be positive");
            if (!arr.is_array()) throw scheme_error("si rows must be arrays");
            std::vector<std::uint8_t> bits;
            for (const auto& b : arr) {
                const int v = b.get<int>();
                if (v != 0 && v != 1) throw scheme_error("si bits must be 0 or 1");
                bits.push_back(static_cast<std::uint8_t>(v));
            }
            si.rows[m] = std::move(bits);
        }
        return si;
    } catch (const json::exception& e) {
        throw scheme_error(std::string("malformed si document: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw scheme_error("si row keys must be integer message ids");
    } catch (const std::out_of_range&) {
        throw scheme_error("si row key out of range");
    }
}

std::string audit_to_json(const audit_report& rep) {
    json doc;
    doc["k"] = rep.k;
    doc["used_search"] = rep.used_search;
    doc["all_pass"] = rep.all_pass();
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json row;
        row["demand"] = e.demand;
        row["si"] = json::array({e.si.first, e.si.second});
        row["case"] = e.case_id;
        row["structure_match"] = e.structure_match;
        row["decodable"] = e.decodable;
        row["note"] = e.note;
        row["pass"] = e.pass();
        entries.push_back(std::move(row));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw scheme_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scheme_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw scheme_error("failed to write: " + path);
}

}  // namespace pirpsi
