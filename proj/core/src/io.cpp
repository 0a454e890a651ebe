// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include "sracer/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace sracer {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::optional<std::int64_t> asInt(std::string_view s)
{
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        return std::nullopt;
    return v;
}

std::optional<double> asReal(std::string_view s)
{
    if (s.empty())
        return std::nullopt;
    std::string copy(s);
    std::size_t used = 0;
    try {
        double v = std::stod(copy, &used);
        if (used != copy.size() || !std::isfinite(v))
            return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Value fromText(const std::string& attr, std::string_view raw, ValueType type)
{
    switch (type) {
    case ValueType::Text:
        return std::string(raw);
    case ValueType::Int:
        if (auto v = asInt(raw))
            return *v;
        throw InvalidEvent("attribute '" + attr + "': '" + std::string(raw) + "' is not an integer");
    case ValueType::Real:
        if (auto v = asReal(raw))
            return *v;
        throw InvalidEvent("attribute '" + attr + "': '" + std::string(raw) + "' is not a number");
    case ValueType::Auto:
        if (auto v = asInt(raw))
            return *v;
        if (auto v = asReal(raw))
            return *v;
        return std::string(raw);
    }
    return std::string(raw);
}

Value fromJson(const std::string& attr, const nlohmann::json& j, ValueType type)
{
    if (j.is_string())
        return type == ValueType::Auto ? Value(j.get<std::string>()) : fromText(attr, j.get<std::string>(), type);
    if (j.is_boolean())
        return std::string(j.get<bool>() ? "true" : "false");
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (type == ValueType::Real)
            return static_cast<double>(v);
        if (type == ValueType::Text)
            return std::to_string(v);
        return v;
    }
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (type == ValueType::Int) {
            if (v != std::floor(v))
                throw InvalidEvent("attribute '" + attr + "': " + j.dump() + " is not an integer");
            return static_cast<std::int64_t>(v);
        }
        if (type == ValueType::Text)
            return j.dump();
        return v;
    }
    throw InvalidEvent("attribute '" + attr + "' must be a string, number or boolean, got " + j.dump());
}

}  // namespace

ValueType SchemaHints::typeOf(std::string_view attribute) const
{
    auto it = types.find(attribute);
    return it == types.end() ? ValueType::Auto : it->second;
}

SchemaHints parseSchemaHints(std::string_view text)
{
    SchemaHints h;
    while (!text.empty()) {
        auto comma = text.find(',');
        std::string_view item = trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw InvalidEvent("schema hint '" + std::string(item) + "' lacks '='");
        std::string name(trim(item.substr(0, eq)));
        std::string_view type = trim(item.substr(eq + 1));
        ValueType t;
        if (type == "text" || type == "string")
            t = ValueType::Text;
        else if (type == "int")
            t = ValueType::Int;
        else if (type == "real" || type == "float")
            t = ValueType::Real;
        else if (type == "auto")
            t = ValueType::Auto;
        else
            throw InvalidEvent("unknown schema type '" + std::string(type) + "'");
        h.types[name] = t;
    }
    return h;
}

Event parseJsonEvent(std::string_view line, const SchemaHints& hints)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidEvent(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object())
        throw InvalidEvent("an event must be a JSON object");
    std::vector<Event::Attribute> attrs;
    for (auto it = j.begin(); it != j.end(); ++it)
        attrs.emplace_back(it.key(), fromJson(it.key(), it.value(), hints.typeOf(it.key())));
    return Event(std::move(attrs));
}

std::vector<std::string> splitCsvLine(std::string_view line)
{
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    bool wasQuoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!trim(field).empty())
                throw InvalidEvent("quote inside an unquoted CSV field");
            field.clear();
            quoted = wasQuoted = true;
        } else if (c == ',') {
            out.push_back(wasQuoted ? field : std::string(trim(field)));
            field.clear();
            wasQuoted = false;
        } else if (wasQuoted && c != ' ' && c != '\t' && c != '\r') {
            throw InvalidEvent("text after a closing quote in a CSV field");
        } else if (!wasQuoted) {
            field += c;
        }
    }
    if (quoted)
        throw InvalidEvent("unterminated quote in a CSV line");
    out.push_back(wasQuoted ? field : std::string(trim(field)));
    return out;
}

EventReader::EventReader(std::istream& in, StreamFormat format, SchemaHints hints)
    : in_(in), format_(format), hints_(std::move(hints))
{
}

std::optional<Record> EventReader::next()
{
    std::string text;
    while (std::getline(in_, text)) {
        ++line_;
        if (trim(text).empty())
            continue;
        Record r;
        r.line = line_;
        try {
            if (format_ == StreamFormat::Jsonl) {
                r.event = parseJsonEvent(text, hints_);
            } else if (!headerRead_) {
                auto header = splitCsvLine(text);
                for (std::size_t i = 0; i < header.size(); ++i) {
                    if (header[i].empty())
                        throw InvalidEvent("empty column name in the CSV header");
                    if (std::find(header.begin(), header.begin() + i, header[i]) != header.begin() + i)
                        throw InvalidEvent("duplicate column '" + header[i] + "' in the CSV header");
                }
                header_ = std::move(header);
                headerRead_ = true;
                continue;
            } else {
                auto fields = splitCsvLine(text);
                if (fields.size() != header_.size())
                    throw InvalidEvent("expected " + std::to_string(header_.size()) + " fields, got " +
                                       std::to_string(fields.size()));
                std::vector<Event::Attribute> attrs;
                for (std::size_t i = 0; i < fields.size(); ++i)
                    attrs.emplace_back(header_[i], fromText(header_[i], fields[i], hints_.typeOf(header_[i])));
                r.event = Event(std::move(attrs));
            }
        } catch (const InvalidEvent& e) {
            if (format_ == StreamFormat::Csv && !headerRead_)
                throw InvalidEvent("line " + std::to_string(line_) + ": " + e.what());
            r.event.reset();
            r.error = e.what();
        }
        return r;
    }
    return std::nullopt;
}

ReadResult readEvents(std::istream& in, StreamFormat format, const SchemaHints& hints)
{
    ReadResult out;
    EventReader reader(in, format, hints);
    while (auto r = reader.next()) {
        if (r->event)
            out.events.push_back(std::move(*r->event));
        else
            out.rejected.push_back(std::move(*r));
    }
    return out;
}

ReadResult readEventsFromFile(const std::string& path, StreamFormat format, const SchemaHints& hints)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidEvent("cannot open " + path);
    return readEvents(in, format, hints);
}

std::string eventToJson(const Event& e)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [name, v] : e.attributes())
        std::visit([&, &name = name](const auto& x) { j[name] = x; }, v);
    return j.dump();
}

StreamFormat formatFromPath(std::string_view path)
{
    auto dot = path.rfind('.');
    if (dot != std::string_view::npos && path.substr(dot) == ".csv")
        return StreamFormat::Csv;
    return StreamFormat::Jsonl;
}

}  // namespace sracer
