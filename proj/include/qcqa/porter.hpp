#pragma once

#include <string>
#include <string_view>

namespace qcqa {

/// Classic Porter stemmer, including the two rule revisions of the
/// reference C release ("bli" -> "ble", "logi" -> "log").
///
/// Input is expected lowercase. Words of one or two characters are returned
/// unchanged; any non a-z byte is treated as a consonant.
std::string porter_stem(std::string_view word);

}  // namespace qcqa
