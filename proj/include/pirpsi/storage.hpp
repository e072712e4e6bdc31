#pragma once

#include "pirpsi/core.hpp"
#include "pirpsi/privacy.hpp"
#include "pirpsi/retrieve.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pirpsi {

inline constexpr int code_document_version = 1;

// ---- code documents (JSON, format_version 1) -------------------------------
// Layout: {"format_version":1,"k":K,"demand":G,"si":[A,B],
//          "queries":[[[ [msg,idx], ... ], ...], [...]]}
// Loading validates everything and rejects violations; it never repairs.
std::string code_to_json(const code& c);
code code_from_json(const std::string& text);
void save_code(const code& c, std::ostream& out);
void save_code(const code& c, const std::string& path);
code load_code(std::istream& in);
code load_code(const std::string& path);

// ---- message stores (binary) ------------------------------------------------
// Layout: magic "PMSG", k as 16-bit big-endian, message_len as 32-bit
// big-endian, then k rows of ceil(message_len/8) bytes packed MSB-first.
std::vector<std::uint8_t> messages_to_bytes(const message_store& store);
message_store messages_from_bytes(const std::vector<std::uint8_t>& bytes);
void save_messages(const message_store& store, const std::string& path);
message_store load_messages(const std::string& path);

// ---- plain-text queries ------------------------------------------------------
// Inverse of render() on its output domain: one codeword per line, terms
// joined by '+', each term a letter A..G plus bit index ("A2+B1") or the
// general form M<id>_<index> for message ids beyond 7.
query parse_query_text(const std::string& text);

// ---- answers and side-information bits (JSON) -------------------------------
// Answer: {"bits":[0,1,...]}.  SI bits: {"rows":{"<msg_id>":[0,1,...],...}}.
std::string answer_to_json(const answer_vector& ans);
answer_vector answer_from_json(const std::string& text);
std::string si_bits_to_json(const si_bits& si);
si_bits si_bits_from_json(const std::string& text);

// ---- audit reports (JSON mirror of the text table) --------------------------
std::string audit_to_json(const audit_report& rep);

// Helpers shared with the CLI.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pirpsi
