#pragma once

#include <string>
#include <string_view>

namespace gauntlet {

// Porter (1980) suffix-stripping stemmer for lowercase English words. Words
// containing anything other than ASCII a-z, or shorter than three letters,
// are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace gauntlet
