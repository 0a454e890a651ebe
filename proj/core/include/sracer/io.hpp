// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SRACER_IO_HPP_
#define SRACER_IO_HPP_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sracer/algebra.hpp"

namespace sracer {

enum class StreamFormat { Jsonl, Csv };

// Attribute typing. Auto keeps JSON types as they are and, for CSV, reads a
// field as an integer, then a real, then text.
enum class ValueType { Auto, Text, Int, Real };

struct SchemaHints {
    std::map<std::string, ValueType, std::less<>> types;

    ValueType typeOf(std::string_view attribute) const;
};

// "type=text,id=int,value=real"
SchemaHints parseSchemaHints(std::string_view text);

struct Record {
    std::size_t line = 0;
    std::optional<Event> event;
    std::string error;  // set when event is absent
};

// Reads one record per non-blank line. For CSV the first non-blank line is the header.
class EventReader {
public:
    EventReader(std::istream& in, StreamFormat format, SchemaHints hints = {});

    std::optional<Record> next();

private:
    std::istream& in_;
    StreamFormat format_;
    SchemaHints hints_;
    std::size_t line_ = 0;
    std::vector<std::string> header_;
    bool headerRead_ = false;
};

struct ReadResult {
    std::vector<Event> events;
    std::vector<Record> rejected;
};

ReadResult readEvents(std::istream& in, StreamFormat format, const SchemaHints& hints = {});
ReadResult readEventsFromFile(const std::string& path, StreamFormat format, const SchemaHints& hints = {});

// Both throw InvalidEvent.
Event parseJsonEvent(std::string_view line, const SchemaHints& hints = {});
std::vector<std::string> splitCsvLine(std::string_view line);

std::string eventToJson(const Event& e);

StreamFormat formatFromPath(std::string_view path);

}  // namespace sracer

#endif  // SRACER_IO_HPP_
