#include "forumcrawl/labels.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace forumcrawl {

namespace {

constexpr std::array<std::pair<LabelKind, std::string_view>, 18> kLabelNames{{
    {LabelKind::HomeLink, "home_link"},
    {LabelKind::UsernameField, "username_field"},
    {LabelKind::PasswordField, "password_field"},
    {LabelKind::LoginButton, "login_button"},
    {LabelKind::SectionLink, "section_link"},
    {LabelKind::SubsectionLink, "subsection_link"},
    {LabelKind::ThreadLink, "thread_link"},
    {LabelKind::NextPage, "next_page"},
    {LabelKind::PrevPage, "prev_page"},
    {LabelKind::FirstPageButton, "first_page_button"},
    {LabelKind::ThreadTitle, "thread_title"},
    {LabelKind::ThreadSection, "thread_section"},
    {LabelKind::PostAuthor, "post_author"},
    {LabelKind::AuthorPostCount, "author_post_count"},
    {LabelKind::AuthorPopularity, "author_popularity"},
    {LabelKind::AuthorRegistrationDate, "author_registration_date"},
    {LabelKind::PostDate, "post_date"},
    {LabelKind::PostContent, "post_content"},
}};

constexpr std::array<std::pair<PageType, std::string_view>, 5> kPageNames{{
    {PageType::Login, "login"},
    {PageType::Home, "home"},
    {PageType::Section, "section"},
    {PageType::Subsection, "subsection"},
    {PageType::Thread, "thread"},
}};

constexpr LabelKind kLogin[] = {LabelKind::HomeLink, LabelKind::UsernameField, LabelKind::PasswordField,
                                LabelKind::LoginButton};
constexpr LabelKind kHome[] = {LabelKind::HomeLink, LabelKind::SectionLink, LabelKind::SubsectionLink};
constexpr LabelKind kListing[] = {LabelKind::HomeLink,   LabelKind::SectionLink, LabelKind::SubsectionLink,
                                  LabelKind::ThreadLink, LabelKind::NextPage,    LabelKind::PrevPage};
constexpr LabelKind kThread[] = {LabelKind::HomeLink,        LabelKind::NextPage,
                                 LabelKind::PrevPage,        LabelKind::FirstPageButton,
                                 LabelKind::ThreadTitle,     LabelKind::ThreadSection,
                                 LabelKind::PostAuthor,      LabelKind::AuthorPostCount,
                                 LabelKind::AuthorPopularity, LabelKind::AuthorRegistrationDate,
                                 LabelKind::PostDate,        LabelKind::PostContent};

}  // namespace

std::string_view to_string(PageType type) {
  for (const auto& [t, name] : kPageNames)
    if (t == type) return name;
  return "unknown";
}

std::string_view to_string(LabelKind label) {
  for (const auto& [l, name] : kLabelNames)
    if (l == label) return name;
  return "unknown";
}

std::optional<PageType> page_type_from_string(std::string_view name) {
  for (const auto& [t, n] : kPageNames)
    if (n == name) return t;
  return std::nullopt;
}

std::optional<LabelKind> label_from_string(std::string_view name) {
  for (const auto& [l, n] : kLabelNames)
    if (n == name) return l;
  return std::nullopt;
}

std::span<const LabelKind> labels_for(PageType type) {
  switch (type) {
    case PageType::Login: return kLogin;
    case PageType::Home: return kHome;
    case PageType::Section:
    case PageType::Subsection: return kListing;
    case PageType::Thread: return kThread;
  }
  return {};
}

bool label_valid_for(PageType type, LabelKind label) {
  auto labels = labels_for(type);
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

bool label_carries_date(LabelKind label) {
  return label == LabelKind::PostDate || label == LabelKind::AuthorRegistrationDate;
}

bool label_is_per_post(LabelKind label) {
  switch (label) {
    case LabelKind::PostAuthor:
    case LabelKind::AuthorPostCount:
    case LabelKind::AuthorPopularity:
    case LabelKind::AuthorRegistrationDate:
    case LabelKind::PostDate:
    case LabelKind::PostContent: return true;
    default: return false;
  }
}

}  // namespace forumcrawl
