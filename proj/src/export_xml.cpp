#include "corpusmill/export_xml.hpp"

#include <cinttypes>
#include <cstdio>
#include <ctime>

#include "corpusmill/text.hpp"
#include "corpusmill/xml.hpp"

namespace corpusmill {

namespace {

std::string format_score(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out.push_back(sep);
    out += part;
  }
  return out;
}

}  // namespace

std::string format_utc(std::int64_t epoch_seconds) {
  std::time_t t = static_cast<std::time_t>(epoch_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::int64_t parse_utc(std::string_view text) {
  std::tm tm{};
  int y, mo, d, h, mi, s;
  if (std::sscanf(std::string(text).c_str(), "%d-%d-%dT%d:%d:%dZ", &y, &mo, &d, &h, &mi, &s) != 6)
    throw ExportError("bad timestamp: " + std::string(text));
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  return static_cast<std::int64_t>(timegm(&tm));
}

std::string write_document_xml(const ParsedDoc& doc, const CrawlMeta& meta) {
  if (!doc.main_language) throw ExportError("document has no main language: " + doc.url);
  if (!doc.relevance) throw ExportError("document has no relevance score: " + doc.url);

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<cesDoc version=\"1.0\">\n";
  out += "  <cesHeader>\n";
  out += "    <url>" + xml::escape(doc.url) + "</url>\n";
  out += "    <fetched>" + format_utc(meta.fetched_at) + "</fetched>\n";
  out += "    <language>" + xml::escape(*doc.main_language) + "</language>\n";
  out += "    <topics classes=\"" + xml::escape_attr(join(meta.topic_classes, ' ')) +
         "\" score=\"" + format_score(doc.relevance->value, 4) + "\"/>\n";
  out += "  </cesHeader>\n";
  out += "  <text>\n";
  out += "    <body>\n";
  for (const Block& block : doc.blocks) {
    out += "      <p";
    if (block.language && *block.language != *doc.main_language)
      out += " lang=\"" + xml::escape_attr(*block.language) + "\"";
    if (block.is_boilerplate) out += " crawlinfo=\"boilerplate\"";
    out += ">" + xml::escape(block.text) + "</p>\n";
  }
  out += "    </body>\n";
  out += "  </text>\n";
  out += "</cesDoc>\n";
  return out;
}

ReadDocument read_document_xml(std::string_view xml_text) {
  xml::Node root = xml::parse(xml_text);
  if (root.name != "cesDoc") throw xml::ParseError("expected <cesDoc> root", "/" + root.name);

  ReadDocument out;
  const xml::Node& header = root.require("cesHeader");
  out.doc.url = header.require("url").text;
  out.meta.fetched_at = parse_utc(header.require("fetched").text);
  out.doc.main_language = header.require("language").text;
  const xml::Node& topics = header.require("topics");
  auto classes = topics.attr("classes");
  if (classes && !classes->empty()) {
    std::size_t start = 0;
    while (start <= classes->size()) {
      auto space = classes->find(' ', start);
      if (space == std::string::npos) {
        out.meta.topic_classes.push_back(classes->substr(start));
        break;
      }
      out.meta.topic_classes.push_back(classes->substr(start, space - start));
      start = space + 1;
    }
  }
  auto score_attr = topics.attr("score");
  if (!score_attr) throw xml::ParseError("missing score attribute", "/cesDoc/cesHeader/topics");
  out.score = std::strtod(score_attr->c_str(), nullptr);
  RelevanceScore relevance;
  relevance.value = out.score;
  out.doc.relevance = relevance;

  const xml::Node& body = root.require("text").require("body");
  for (const xml::Node& p : body.children) {
    if (p.name != "p") continue;
    Block block;
    block.text = p.text;
    block.tokens = static_cast<int>(tokenize(block.text).size());
    if (auto lang = p.attr("lang")) block.language = *lang;
    else block.language = out.doc.main_language;
    if (auto info = p.attr("crawlinfo")) block.is_boilerplate = *info == "boilerplate";
    block.tag_path = "p";
    out.doc.blocks.push_back(std::move(block));
  }
  return out;
}

std::string render_index(std::span<const IndexRow> rows) {
  std::string out = "file\turl\tscore\tlanguage\n";
  for (const IndexRow& row : rows) {
    out += row.file + "\t" + row.url + "\t" + format_score(row.score, 4) + "\t" + row.language +
           "\n";
  }
  return out;
}

std::vector<IndexRow> parse_index(std::string_view text) {
  std::vector<IndexRow> rows;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (line.empty()) continue;
    if (first) {  // header
      first = false;
      continue;
    }
    IndexRow row;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        fields.emplace_back(line.substr(start));
        break;
      }
      fields.emplace_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 4) throw ExportError("bad index row: " + std::string(line));
    row.file = fields[0];
    row.url = fields[1];
    row.score = std::strtod(fields[2].c_str(), nullptr);
    row.language = fields[3];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string write_pair_xml(const DocumentPair& pair, std::string_view lang_a,
                           std::string_view lang_b, std::string_view href_a,
                           std::string_view href_b) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<pair score=\"" + format_score(pair.score, 2) + "\">\n";
  out += "  <doc lang=\"" + xml::escape_attr(lang_a) + "\" href=\"" + xml::escape_attr(href_a) +
         "\"/>\n";
  out += "  <doc lang=\"" + xml::escape_attr(lang_b) + "\" href=\"" + xml::escape_attr(href_b) +
         "\"/>\n";
  out += "</pair>\n";
  return out;
}

PairFileRef read_pair_xml(std::string_view xml_text) {
  xml::Node root = xml::parse(xml_text);
  if (root.name != "pair") throw xml::ParseError("expected <pair> root", "/" + root.name);
  PairFileRef ref;
  auto score = root.attr("score");
  if (!score) throw xml::ParseError("missing score attribute", "/pair");
  ref.score = std::strtod(score->c_str(), nullptr);
  std::vector<const xml::Node*> docs;
  for (const xml::Node& child : root.children)
    if (child.name == "doc") docs.push_back(&child);
  if (docs.size() != 2) throw xml::ParseError("expected exactly two <doc> children", "/pair");
  ref.lang_a = docs[0]->attr("lang").value_or("");
  ref.href_a = docs[0]->attr("href").value_or("");
  ref.lang_b = docs[1]->attr("lang").value_or("");
  ref.href_b = docs[1]->attr("href").value_or("");
  return ref;
}

}  // namespace corpusmill
