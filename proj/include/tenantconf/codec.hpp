// Copyright 2026 The tenantconf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TENANTCONF_CODEC_HPP
#define TENANTCONF_CODEC_HPP

#include <string>
#include <string_view>
#include <vector>

#include "tenantconf/errors.hpp"
#include "tenantconf/model.hpp"

// Canonical XML grammar, one document per category:
//
//   CSSELEMENTS/CSSELEMENT{NAME,LOCATION}
//   IMAGEELEMENTS/IMAGEELEMENT{NAME,SRC}
//   SCRIPTELEMENTS/SCRIPTELEMENT{NAME,SRC}
//   PROPERTIES{LABELS/LABELELEMENT{NAME,VALUE}, TEXTS/TEXTELEMENT{NAME,VALUE}}
//   BLOCKS/BLOCK{COMPONENT,VIEWNAME,TITLE,DISPLAY,LOADOPTION}
//   FIELDS/FIELD{FIELDNAME,DISPLAY,POSITIONFROM,POSITIONTO}
//   BOS/BO{BONAME,ENABLE}
//   BES/BE{BENAME,API,STATE,ERPBACKEND}
//   CONNECTIONS/CONNECTION{NAME,HOST,CLIENT}
//   BUSINESSROLES/BUSINESSROLE{NAME,DESCRIPTION,NAVBAR,TECPROFILE,LAYPROFILE,PFCG}
//   BUSINESSROLES/BUSINESSROLE{NAME,DESCRIPTION?,BOLS/BOL{NAME,USE}}   (bol-access)
//   DOS/DO{NAME,DATABASENAME}
//   DATABASES/DATABASE{NAME,HOST,USE}
//   KEYVALUES/KV{KEY, VALUE | SET/ITEM*}
//   WORKFLOWS/WORKFLOW{ID,NAME,ROLE,TASKS/TASK{STEP,ACTIVITY,BO,METHOD,RULE?}}
//
// Children of an entry may appear in any order when parsing; serialize()
// always writes them in the order listed. Booleans are True/False (the
// reader also takes true/false); enums are Direct/Lazy, Full/Less and
// Default/Request.

namespace tenantconf {

enum class ParseErrorCode { kMalformedXml, kUnknownTag, kMissingTag, kBadEnum, kBadNumber };

std::string_view parse_error_code_name(ParseErrorCode code) noexcept;

class ParseError : public Error {
 public:
  ParseError(ConfigCategory category, int line, int column, ParseErrorCode code,
             std::string detail);

  ConfigCategory category() const noexcept { return category_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  ParseErrorCode parse_code() const noexcept { return parse_code_; }

 private:
  ConfigCategory category_;
  int line_;
  int column_;
  ParseErrorCode parse_code_;
};

/// Strict parse. The result is structurally well formed but not validated;
/// its version is 0. `language` is stored on Properties documents only.
ConfigDocument parse(ConfigCategory category, std::string_view bytes,
                     std::string language = {});
ConfigDocument parse(const DocKey& key, std::string_view bytes);

/// Canonical bytes; value-equal documents serialize identically. The
/// version is not part of the wire form.
std::string serialize(const ConfigDocument& doc);

/// One entry of a document in canonical form, e.g. for entry-level diffs.
struct EntryDigest {
  std::string tag;  // CSSELEMENT, LABELELEMENT, BLOCK, ...
  std::string key;
  std::string canonical;
};
std::vector<EntryDigest> entry_digests(const ConfigDocument& doc);

}  // namespace tenantconf

#endif  // TENANTCONF_CODEC_HPP
