#include "retina_duo/event_io.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "retina_duo/error.hpp"

namespace retina_duo {

namespace {

template <typename T>
void put_le(std::array<char, kEventRecordSize>& buf, std::size_t offset, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[offset + i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFFu);
}

template <typename T>
T get_le(const std::array<char, kEventRecordSize>& buf, std::size_t offset) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[offset + i]))
         << (8 * i);
  return static_cast<T>(v);
}

template <typename T>
T parse_field(std::string_view text, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorCode::Parse, "bad event field '" + std::string(text) +
                                      "' on line " + std::to_string(line_no));
  return value;
}

}  // namespace

void write_events_binary(std::ostream& out, std::span<const Event> events) {
  out.write(kEventMagic, kEventMagicSize);
  std::array<char, kEventRecordSize> buf{};
  for (const Event& e : events) {
    buf.fill(0);
    put_le(buf, 0, e.t_us);
    put_le(buf, 8, e.x);
    put_le(buf, 10, e.y);
    put_le(buf, 12, static_cast<std::uint8_t>(e.polarity));
    out.write(buf.data(), buf.size());
  }
  if (!out) throw Error(ErrorCode::Io, "failed writing event stream");
}

std::vector<Event> read_events_binary(std::istream& in) {
  std::array<char, kEventMagicSize> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(kEventMagicSize) ||
      std::string_view(magic.data(), magic.size()) !=
          std::string_view(kEventMagic, kEventMagicSize))
    throw Error(ErrorCode::Parse, "missing RDUO1 magic header");

  std::vector<Event> events;
  std::array<char, kEventRecordSize> buf{};
  while (true) {
    in.read(buf.data(), buf.size());
    const std::streamsize got = in.gcount();
    if (got == 0) break;
    if (got != static_cast<std::streamsize>(kEventRecordSize))
      throw Error(ErrorCode::Parse, "truncated event record");
    const auto polarity = get_le<std::uint8_t>(buf, 12);
    if (polarity > 1) throw Error(ErrorCode::Parse, "bad polarity byte");
    if (buf[13] != 0 || buf[14] != 0 || buf[15] != 0)
      throw Error(ErrorCode::Parse, "non-zero padding in event record");
    events.push_back({get_le<std::uint64_t>(buf, 0), get_le<std::uint16_t>(buf, 8),
                      get_le<std::uint16_t>(buf, 10),
                      static_cast<Polarity>(polarity)});
  }
  return events;
}

void write_events_csv(std::ostream& out, std::span<const Event> events) {
  out << "t_us,x,y,polarity\n";
  for (const Event& e : events)
    out << e.t_us << ',' << e.x << ',' << e.y << ','
        << static_cast<int>(e.polarity) << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed writing event CSV");
}

std::vector<Event> read_events_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t_us,x,y,polarity")
    throw Error(ErrorCode::Parse, "missing event CSV header");
  std::vector<Event> events;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<std::string_view, 4> fields;
    std::string_view rest = line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (i == fields.size() - 1))
        throw Error(ErrorCode::Parse, "expected 4 fields on line " +
                                          std::to_string(line_no));
      fields[i] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    const auto polarity = parse_field<unsigned>(fields[3], line_no);
    if (polarity > 1) throw Error(ErrorCode::Parse, "bad polarity on line " + std::to_string(line_no));
    events.push_back({parse_field<std::uint64_t>(fields[0], line_no),
                      parse_field<std::uint16_t>(fields[1], line_no),
                      parse_field<std::uint16_t>(fields[2], line_no),
                      static_cast<Polarity>(polarity)});
  }
  return events;
}

void save_events_binary(const std::string& path, std::span<const Event> events) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_events_binary(out, events);
}

std::vector<Event> load_events_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return read_events_binary(in);
}

void save_events_csv(const std::string& path, std::span<const Event> events) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_events_csv(out, events);
}

}  // namespace retina_duo
