#include "guideline_prompts.hpp"

namespace eeguide::prompts {

const std::string_view kGenerationIntro =
    R"PROMPT(You are an expert in annotating NLP datasets for event extraction. Your task is to generate "detailed" annotation guidelines for the event type )PROMPT";

// Everything between the header sentence and the event schema block.
const std::string_view kGenerationBody = R"PROMPT(
Input Format will be as following
```
Event Schema:
Event Name and its parent class
Arguments:
Arguments separated by new lines. If there are no arguments None will be given.

Examples
```
Instructions:
1) Identify and list all unique arguments related to the event type.
2) Define the event type and each argument. You can take help of examples below to understand the events and their arguments. 
3) Please remember that the examples may not cover all the arguments in the list. In some cases, you may not have arguments at all, in such cases, you can have an empty list for arguments. 
4) For each definition, provide 5 illustrative definitions in JSON format. For events you can add example triggers and the explanation of the events such as edge cases and other critical details starting with "The event can be triggered by ... ". Similarly for arguments also you can add examples, and detailed information for them including any edge case or domain knowledge starting with "Examples are ... ".
5) Remember to not generate any additional information such as examples, etc. and strictly follow the output format shown below.
6) Remember also to add detailed information for the events and arguments so that the annotators who are not familiar with machine learning and NLP can still solve the task. Remember to add required domain knowledge and please cover the edge cases when possible.
7) Remember that while generating examples for the event or attributes you should generate diverse set of triggers or argument values rather than picking them from the examples I have provided for each of the 5 generated guidelines.

Output Format:
{
  "Event Definition": [
    "Definition 1",
    "Definition 2",
    "Definition 3",
    "Definition 4",
    "Definition 5"
  ],
  "Arguments Definitions": {
    "Argument1": [
      "Definition 1",
      "Definition 2",
      "Definition 3",
      "Definition 4",
      "Definition 5"
    ],
    "Argument2": [
      "Definition 1",
      "Definition 2",
      "Definition 3",
      "Definition 4",
      "Definition 5"
    ]
    // Add additional arguments as necessary
  }
}

)PROMPT";

// Consolidation prompt up to and including the "Guidelines to Summarize" heading.
const std::string_view kConsolidationBody = R"PROMPT(You are an expert in summarizing NLP event extraction guidelines. Your goal is to consolidate multiple detailed descriptions into a single concise, comprehensive "Intergrated" guideline.

### Input Format ###
Event Type: Event Type Name
```json
{
  "Event Definition": [
    "Definition 1",
    "Definition 2",
    "Definition 3",
    "Definition 4",
    "Definition 5"
  ],
  "Arguments Definitions": {
    "mention": [
      "Definition 1",
      "Definition 2",
      "Definition 3",
      "Definition 4",
      "Definition 5"
    ],
    "Argument1": [
      "Definition 1",
      "Definition 2",
      "Definition 3",
      "Definition 4",
      "Definition 5"
    ],
    // Add additional arguments as necessary
  }
}
```

### Task ###
1. Integrated the 5 definitions under "Event Definition" into a single definition:
   - Highlight all critical points and examples from the five definitions.
   - Ensure the description is concise, comprehensive, and clear, using formal language that non-experts can understand.

2. Do the same for each argument under "Arguments Definitions," producing a single intergrated definition for each. 

### Output Format ###
```json
{
  "Event Definition": "Consolidated intergrated guideline for the event type.",
  "Arguments Definitions": {
    "mention": "Consolidated intergrated guideline for the mention argument.",
    "Argument1": "Consolidated intergrated guideline for Argument1.",
    "Argument2": "Consolidated intergrated guideline for Argument2."
    // Add additional arguments as necessary
  }
}
```

### Guidelines to Summarize ###
)PROMPT";

}  // namespace eeguide::prompts
