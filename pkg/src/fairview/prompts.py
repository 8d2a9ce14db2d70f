"""Prompt templates for the text-generation provider.

Two generation tasks exist: grouping extracted keywords into six named
topics, and writing the summary + suggestion body of a reminder. Both ask
for strict JSON so the replies can be schema-validated; any deviation
falls back to the deterministic offline path.
"""

TOPIC_SYSTEM_PROMPT = (
    "You are a professional hotel review analyst. Your task is to categorize \n"
    "the provided hotel review keywords into 6 main, high-level categories. \n"
    "Each category should have a concise description and list all the \n"
    "original keywords that belong to it. The final result must be in JSON \n"
    "format. The JSON structure should contain a list named 'categories', \n"
    "where each object in the list includes 'category', 'description', and "
    "'keywords' (a list of all keywords for that category)."
)

TOPIC_USER_PROMPT = """Please categorize the following hotel review keywords into 6 classes,
and list the corresponding keywords for each category:
Keywords: {keywords_string}
Ensure each category name is high-level, provide a brief description,
and include a 'keywords' list containing all keywords for that category.
Ecach keyword should appear in only one category.
Example JSON format:
 [
    {{
      "category": "CATEGORY_NAME_1",
      "description": "Brief description of this category.",
      "keywords": ["keyword1", "keyword2", "keyword3"]
    }},
    {{
      "category": "CATEGORY_NAME_2",
      "description": "Brief description of this category.",
      "keywords": ["keyword4", "keyword5"]
    }},
    ...
  ]"""

REMINDER_SYSTEM_PROMPT = (
    "You are a helpful AI assistant designed to promote reflective and balanced "
    'thinking for users analyzing online reviews. """ Your task is to analyze a '
    "user's recent reading activity and the content of the reviews they have "
    "engaged with. Based on this analysis, you will generate a concise, neutral "
    "summary of the key points from the reviews and provide a gentle, actionable "
    "suggestion to help the user consider a broader range of perspectives or "
    "topics. The final output must be in JSON format, containing two keys: "
    "'summary' and 'suggestion'. \"\"\""
)

REMINDER_USER_PROMPT = """A user is reviewing hotel comments and our system has detected a potential bias in their reading pattern.

Trigger Reason: {trigger_reason}
Reading Statistics: {statistics}
Recently Engaged Comments:
\"\"\"
{comment_texts}
\"\"\"


Based on the information above, please generate a concise summary of the provided comments and an actionable suggestion to encourage more balanced exploration. The tone should be supportive and helpful, nudging the user to reflect without being prescriptive.
\"\"\"
Example JSON format:
{{
"summary": "Guests frequently praise the spacious rooms and comfortable beds, often highlighting the great views from the balcony. However, several reviews also mention that the Wi-Fi signal can be weak and the water pressure in the shower is inconsistent.",
"suggestion": "You've focused on some of the room's technical issues. It might be useful to also see what people have said about the comfort and space of the rooms to get a fuller picture."
\"\"\"
}}"""


def topic_prompt(keywords: list[str]) -> tuple[str, str]:
    """(system, user) prompt pair for keyword categorization."""
    return TOPIC_SYSTEM_PROMPT, TOPIC_USER_PROMPT.format(keywords_string=", ".join(keywords))


def reminder_prompt(trigger_reason: str, statistics: str, comment_texts: list[str]) -> tuple[str, str]:
    """(system, user) prompt pair for the reminder summary + suggestion."""
    return REMINDER_SYSTEM_PROMPT, REMINDER_USER_PROMPT.format(
        trigger_reason=trigger_reason,
        statistics=statistics,
        comment_texts="\n".join(comment_texts),
    )
