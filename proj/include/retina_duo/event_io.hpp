#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "retina_duo/channels.hpp"

namespace retina_duo {

// Binary event file: the 6-byte magic "RDUO1\n" followed by 16-byte
// little-endian records {u64 t_us, u16 x, u16 y, u8 polarity, 3 zero bytes}.
inline constexpr char kEventMagic[] = "RDUO1\n";
inline constexpr std::size_t kEventMagicSize = 6;
inline constexpr std::size_t kEventRecordSize = 16;

void write_events_binary(std::ostream& out, std::span<const Event> events);
std::vector<Event> read_events_binary(std::istream& in);

// CSV mirror with header "t_us,x,y,polarity" (polarity 1 = ON, 0 = OFF).
void write_events_csv(std::ostream& out, std::span<const Event> events);
std::vector<Event> read_events_csv(std::istream& in);

void save_events_binary(const std::string& path, std::span<const Event> events);
std::vector<Event> load_events_binary(const std::string& path);
void save_events_csv(const std::string& path, std::span<const Event> events);

}  // namespace retina_duo
