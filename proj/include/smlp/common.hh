/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_COMMON_HH
#define SMLP_COMMON_HH

#include <cstdarg>
#include <cstdio>
#include <ctime>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace smlp {

using str = std::string;
using strview = std::string_view;

template <typename T> using vec = std::vector<T>;
template <typename K, typename V> using hmap = std::unordered_map<K,V>;
template <typename T> using hset = std::unordered_set<T>;
template <typename T> using opt = std::optional<T>;
template <typename T> using sptr = std::shared_ptr<T>;
template <typename T> using uptr = std::unique_ptr<T>;

using std::move;
using std::pair;

/* Any user-facing failure throws this; the CLI catches it, prints the
 * message and exits non-zero. */
struct error : std::runtime_error {

	explicit error(const str &msg) : std::runtime_error(msg) {}
};

inline str vstrf(const char *fmt, va_list ap)
{
	va_list ap2;
	va_copy(ap2, ap);
	int n = vsnprintf(NULL, 0, fmt, ap2);
	va_end(ap2);
	str s(n < 0 ? 0 : n, '\0');
	if (n > 0)
		vsnprintf(s.data(), n+1, fmt, ap);
	return s;
}

[[gnu::format(printf,1,2)]]
inline str strf(const char *fmt, ...)
{
	va_list ap;
	va_start(ap, fmt);
	str s = vstrf(fmt, ap);
	va_end(ap);
	return s;
}

[[noreturn, gnu::format(printf,1,2)]]
inline void die(const char *fmt, ...)
{
	va_list ap;
	va_start(ap, fmt);
	str s = vstrf(fmt, ap);
	va_end(ap);
	throw error(s);
}

/* stderr diagnostics; timestamps are opt-in (CLI flag -log_time) */
inline bool log_timestamps = false;

inline void log_line(const char *pfx, const char *fmt, va_list ap)
{
	str s = vstrf(fmt, ap);
	if (log_timestamps) {
		char buf[32];
		time_t t = time(NULL);
		struct tm tm;
		localtime_r(&t, &tm);
		strftime(buf, sizeof(buf), "%Y-%m-%d %H:%M:%S", &tm);
		fprintf(stderr, "[%s] %s: %s\n", buf, pfx, s.c_str());
	} else
		fprintf(stderr, "%s: %s\n", pfx, s.c_str());
}

[[gnu::format(printf,1,2)]]
inline void warn(const char *fmt, ...)
{
	va_list ap;
	va_start(ap, fmt);
	log_line("smlp: warning", fmt, ap);
	va_end(ap);
}

[[gnu::format(printf,1,2)]]
inline void note(const char *fmt, ...)
{
	va_list ap;
	va_start(ap, fmt);
	log_line("smlp", fmt, ap);
	va_end(ap);
}

} // namespace smlp

#endif
