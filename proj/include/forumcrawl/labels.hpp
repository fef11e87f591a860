#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace forumcrawl {

enum class PageType { Login, Home, Section, Subsection, Thread };

enum class LabelKind {
  HomeLink,
  UsernameField,
  PasswordField,
  LoginButton,
  SectionLink,
  SubsectionLink,
  ThreadLink,
  NextPage,
  PrevPage,
  FirstPageButton,
  ThreadTitle,
  ThreadSection,
  PostAuthor,
  AuthorPostCount,
  AuthorPopularity,
  AuthorRegistrationDate,
  PostDate,
  PostContent,
};

inline constexpr PageType kAllPageTypes[] = {PageType::Login, PageType::Home, PageType::Section,
                                             PageType::Subsection, PageType::Thread};

std::string_view to_string(PageType type);
std::string_view to_string(LabelKind label);
std::optional<PageType> page_type_from_string(std::string_view name);
std::optional<LabelKind> label_from_string(std::string_view name);

/// Labels assignable on a page type, in display order.
std::span<const LabelKind> labels_for(PageType type);
bool label_valid_for(PageType type, LabelKind label);
/// Labels whose text is a date and may carry a date format.
bool label_carries_date(LabelKind label);
/// Labels that occur once per post on thread pages.
bool label_is_per_post(LabelKind label);

}  // namespace forumcrawl
