#include "templates.hpp"

// The shipped prompt pool: 40 patterns per task, first 20 train, last 20 test.

namespace forge {

namespace {

struct TaskPatterns {
  Task task;
  const char* patterns[40];
};

const TaskPatterns kPatterns[] = {
    {Task::UH2I,
     {
         // train
         "A user has played {HISTORY}. Recommend an item for him to play next",
         "Someone has been playing {HISTORY}. What should they try next?",
         "I finished {HISTORY}. Suggest my next game.",
         "Based on a library of {HISTORY}, pick the next game for this player.",
         "This player's history: {HISTORY}. Recommend something new for them.",
         "After playing {HISTORY}, what game would suit this user?",
         "A gamer enjoyed {HISTORY}. Find another title for their queue.",
         "Given that a user spent time on {HISTORY}, propose a follow-up game.",
         "My recent games were {HISTORY}. What next?",
         "Play history includes {HISTORY}. Choose the next recommendation.",
         "He has completed {HISTORY}. Offer one more game to play.",
         "She played {HISTORY} this year. Recommend her next purchase.",
         "User log: {HISTORY}. Retrieve a suitable next title.",
         "Considering the sequence {HISTORY}, what would this person enjoy now?",
         "Their shelf already holds {HISTORY}. Add one more recommendation.",
         "I had fun with {HISTORY}. Give me something to play tonight.",
         "A customer bought {HISTORY}. Recommend a new game for them.",
         "From the play record {HISTORY}, infer the next best game.",
         "Having binged {HISTORY}, the user wants a fresh title.",
         "Games played so far: {HISTORY}. Next recommendation, please.",
         // test
         "The user previously played {HISTORY}. What is a good next game?",
         "Recommend one more game for a player whose history is {HISTORY}.",
         "Recently finished: {HISTORY}. Pick my next adventure.",
         "A person has logged hours in {HISTORY}. Suggest their next game.",
         "With {HISTORY} already played, what should come next?",
         "Profile history shows {HISTORY}. Serve the next recommendation.",
         "They have worked through {HISTORY}. What title follows?",
         "Given the played list {HISTORY}, choose a follow-up.",
         "My collection so far: {HISTORY}. What should I play after these?",
         "A user who played {HISTORY} is looking for a new game.",
         "Past sessions covered {HISTORY}. Recommend the next session's game.",
         "After {HISTORY}, which game keeps this player engaged?",
         "This account played {HISTORY}. Retrieve the next item.",
         "Someone whose favorites were {HISTORY} needs a suggestion.",
         "History list {HISTORY} in hand, pick one more title.",
         "I've already beaten {HISTORY}. Next game?",
         "The player completed {HISTORY} and wants another recommendation.",
         "Looking at the timeline {HISTORY}, what game comes next?",
         "For a gamer with {HISTORY} behind them, suggest something new.",
         "The library holds {HISTORY}. Propose the next purchase.",
     }},
    {Task::I2I,
     {
         // train
         "Games like {ITEM}",
         "Find titles similar to {ITEM}.",
         "What else plays like {ITEM}?",
         "Recommend something in the spirit of {ITEM}.",
         "I loved {ITEM}. Show me comparable games.",
         "Looking for alternatives to {ITEM}.",
         "Suggest games that fans of {ITEM} would enjoy.",
         "More games in the vein of {ITEM}, please.",
         "If someone enjoyed {ITEM}, what should they play?",
         "Titles that feel like {ITEM}",
         "Show games resembling {ITEM}.",
         "Anything similar to {ITEM}?",
         "Players of {ITEM} also enjoy which games?",
         "Give me a game that scratches the same itch as {ITEM}.",
         "What is the closest match to {ITEM}?",
         "Games to play after finishing {ITEM}",
         "Hunting for experiences like {ITEM}.",
         "Which titles pair well with {ITEM}?",
         "Something along the lines of {ITEM}",
         "Recommend counterparts to {ITEM}.",
         // test
         "Find me games similar to {ITEM}.",
         "What games are like {ITEM}?",
         "Alternatives to {ITEM}, please.",
         "I want another game that plays like {ITEM}.",
         "Suggest a few titles close to {ITEM}.",
         "Games comparable to {ITEM}",
         "Fans of {ITEM} should try which games?",
         "Show me the nearest neighbors of {ITEM}.",
         "Something else in the style of {ITEM}?",
         "After {ITEM}, which similar game comes next?",
         "Retrieve games matching the feel of {ITEM}.",
         "What would you recommend to someone who adores {ITEM}?",
         "Other games cut from the same cloth as {ITEM}",
         "Pick a game that rivals {ITEM}.",
         "More like {ITEM}.",
         "Which titles echo {ITEM}?",
         "In search of a substitute for {ITEM}.",
         "Games that share DNA with {ITEM}",
         "Queue up something similar to {ITEM}.",
         "Closest games to {ITEM}?",
     }},
    {Task::US2I,
     {
         // train
         "{SUMMARY} Recommend a game for this user.",
         "{SUMMARY} What should they play next?",
         "User profile: {SUMMARY} Suggest a matching title.",
         "{SUMMARY} Pick one game they would enjoy.",
         "Here is a player description: {SUMMARY} Find them a game.",
         "{SUMMARY} Which game fits this taste?",
         "About the user: {SUMMARY} Retrieve a suitable game.",
         "{SUMMARY} Choose their next adventure.",
         "Profile summary: {SUMMARY} Recommend accordingly.",
         "{SUMMARY} Based on this, serve one recommendation.",
         "An analyst writes: {SUMMARY} What game matches?",
         "{SUMMARY} Select a game tailored to them.",
         "Player notes: {SUMMARY} Suggest their next purchase.",
         "{SUMMARY} Given this profile, what is the best pick?",
         "Summary of tastes: {SUMMARY} Recommend one title.",
         "{SUMMARY} Propose a game for tonight.",
         "Their preferences read: {SUMMARY} Find the right game.",
         "{SUMMARY} What single game suits this person?",
         "Description of the player: {SUMMARY} Match them with a game.",
         "{SUMMARY} Recommend something they have not tried.",
         // test
         "{SUMMARY} Find a game this user would like.",
         "Reviewer profile: {SUMMARY} Which title should they get?",
         "{SUMMARY} Suggest one game for them.",
         "Consider this description: {SUMMARY} Recommend a game.",
         "{SUMMARY} What would be a fitting next game?",
         "A profile reads: {SUMMARY} Pick a matching game.",
         "{SUMMARY} Choose something for this player.",
         "Based on the summary: {SUMMARY} Retrieve one title.",
         "{SUMMARY} Which game should be recommended?",
         "Taste description: {SUMMARY} Serve a recommendation.",
         "{SUMMARY} Select the next game for them.",
         "Given this portrait: {SUMMARY} Find an appropriate game.",
         "{SUMMARY} Propose one suitable title.",
         "The notes say: {SUMMARY} What game do they want?",
         "{SUMMARY} Make a recommendation for this person.",
         "From the profile: {SUMMARY} Pick their next game.",
         "{SUMMARY} Which item matches these habits?",
         "Account summary: {SUMMARY} Recommend a new game.",
         "{SUMMARY} Offer a game aligned with this taste.",
         "Here is what we know: {SUMMARY} Suggest a title.",
     }},
    {Task::FA2I,
     {
         // train
         "What games offer these features? {ATTRS}",
         "Find a game with: {ATTRS}",
         "Looking for titles matching {ATTRS}",
         "Which games have {ATTRS}?",
         "Search the catalog for {ATTRS}.",
         "Game wanted with the following details: {ATTRS}",
         "Retrieve items described by {ATTRS}.",
         "I need a game whose specs are {ATTRS}.",
         "Match this attribute list: {ATTRS}",
         "Games fitting {ATTRS}, please.",
         "Full spec sheet: {ATTRS}. Which game is this?",
         "Show games with exactly these properties: {ATTRS}",
         "A game with {ATTRS} is what I'm after.",
         "These are the details: {ATTRS}. Find matches.",
         "Locate games carrying {ATTRS}.",
         "Catalog query: {ATTRS}",
         "Which titles satisfy {ATTRS}?",
         "Give me games that list {ATTRS}.",
         "The record reads {ATTRS}. Retrieve similar listings.",
         "Pull up everything matching {ATTRS}.",
         // test
         "What game has these attributes? {ATTRS}",
         "Find games described by: {ATTRS}",
         "Titles with {ATTRS}?",
         "Which items match {ATTRS}?",
         "Searching for a game with {ATTRS}.",
         "Games whose details read {ATTRS}",
         "Retrieve the games fitting this list: {ATTRS}",
         "Attribute sheet: {ATTRS}. Find the games.",
         "Show me listings with {ATTRS}.",
         "I want a title carrying {ATTRS}.",
         "Which games come with {ATTRS}?",
         "Match the following: {ATTRS}",
         "Games that feature {ATTRS}",
         "Catalog lookup for {ATTRS}",
         "Anything in the store with {ATTRS}?",
         "The full details are {ATTRS}. What matches?",
         "Locate titles satisfying {ATTRS}.",
         "Spec list {ATTRS}. Retrieve matching games.",
         "Find everything that offers {ATTRS}.",
         "Which products fit {ATTRS}?",
     }},
    {Task::SA2I,
     {
         // train
         "I only remember a few details: {ATTRS}. Which game is it?",
         "Partial info: {ATTRS}. Find matching games.",
         "A game with {ATTRS}, that's all I know.",
         "Some of its attributes are {ATTRS}. Any matches?",
         "Find games that at least have {ATTRS}.",
         "All I can recall is {ATTRS}.",
         "Looking for a game. Hints: {ATTRS}",
         "Which titles match these few details? {ATTRS}",
         "It has {ATTRS}. What game could that be?",
         "Sparse description: {ATTRS}. Retrieve candidates.",
         "Games with {ATTRS} among their properties",
         "I know only this much: {ATTRS}",
         "Match games on just {ATTRS}.",
         "A couple of clues: {ATTRS}. Find the games.",
         "Search by partial attributes: {ATTRS}",
         "Games listing {ATTRS}, whatever else they have",
         "The bits I remember: {ATTRS}. Which games fit?",
         "Give me games consistent with {ATTRS}.",
         "Fragmentary details: {ATTRS}",
         "Candidates that include {ATTRS}?",
         // test
         "Only these details are known: {ATTRS}. Find the games.",
         "A few scattered attributes: {ATTRS}. What matches?",
         "It definitely has {ATTRS}. Which titles qualify?",
         "Partial spec: {ATTRS}",
         "From memory, it featured {ATTRS}.",
         "Games that at minimum offer {ATTRS}",
         "Clues at hand: {ATTRS}. Retrieve matches.",
         "What games are consistent with {ATTRS}?",
         "The listing mentioned {ATTRS}. Find it.",
         "Incomplete info: {ATTRS}. Candidates?",
         "Titles that carry {ATTRS} at least",
         "Somewhere it said {ATTRS}. Which game?",
         "Search with just {ATTRS}.",
         "Match on these fragments: {ATTRS}",
         "I can offer two or three hints: {ATTRS}",
         "Games whose records include {ATTRS}",
         "Known so far: {ATTRS}. Show possibilities.",
         "Whittle the catalog down to {ATTRS}.",
         "Retrieve games showing {ATTRS}.",
         "Pieces of the description: {ATTRS}",
     }},
    {Task::AS2I,
     {
         // train
         "{SUMMARY} Which game is being described?",
         "A friend described a game as: {SUMMARY} Find it.",
         "{SUMMARY} What title matches this description?",
         "Heard about this one: {SUMMARY} Which game is it?",
         "{SUMMARY} Identify the game.",
         "The review reads: {SUMMARY} Retrieve the title.",
         "{SUMMARY} Find the matching game.",
         "Someone wrote: {SUMMARY} What game are they on about?",
         "{SUMMARY} Which item fits?",
         "Description given: {SUMMARY} Locate it in the catalog.",
         "{SUMMARY} Name the game that matches.",
         "A post says: {SUMMARY} Find that game.",
         "{SUMMARY} What could this title be?",
         "From a forum: {SUMMARY} Which game matches?",
         "{SUMMARY} Search the store for it.",
         "The blurb goes: {SUMMARY} Retrieve the game.",
         "{SUMMARY} Track down this item.",
         "Overheard: {SUMMARY} What game is that?",
         "{SUMMARY} Pull up the matching listing.",
         "Summary in hand: {SUMMARY} Find the game.",
         // test
         "{SUMMARY} What game does this describe?",
         "The description says: {SUMMARY} Which title is it?",
         "{SUMMARY} Match this to a game.",
         "A note reads: {SUMMARY} Find the game in question.",
         "{SUMMARY} Which listing fits the bill?",
         "Shop assistant said: {SUMMARY} Identify the game.",
         "{SUMMARY} Retrieve the described item.",
         "Based on: {SUMMARY} What game is meant?",
         "{SUMMARY} Locate the corresponding title.",
         "The card says: {SUMMARY} Which game?",
         "{SUMMARY} Whose description is this?",
         "Text snippet: {SUMMARY} Find the matching game.",
         "{SUMMARY} Point me to this game.",
         "As described: {SUMMARY} Which item matches?",
         "{SUMMARY} Single out the right title.",
         "An ad claims: {SUMMARY} Retrieve that game.",
         "{SUMMARY} Which game answers to this?",
         "Catalog note: {SUMMARY} Find the title.",
         "{SUMMARY} Surface the game being described.",
         "It was summarized as: {SUMMARY} What game is it?",
     }},
    {Task::NM2I,
     {
         // train
         "{NAME}",
         "Find the game called {NAME}.",
         "Looking for {NAME}",
         "Is there a game named {NAME}?",
         "Search: {NAME}",
         "I think it's called {NAME}.",
         "Show me {NAME}",
         "Trying to find {NAME}",
         "Game title: {NAME}",
         "Where can I get {NAME}?",
         "{NAME}?",
         "The game {NAME}",
         "Pull up {NAME}.",
         "Find {NAME} for me.",
         "Was it {NAME} or something like that?",
         "Store search for {NAME}",
         "I want to buy {NAME}.",
         "Lookup: {NAME}",
         "Get me the page for {NAME}.",
         "Something named {NAME}",
         // test
         "Find {NAME}.",
         "Searching for {NAME}",
         "A game called {NAME}, I believe",
         "Do you have {NAME}?",
         "Retrieve {NAME}",
         "It's spelled {NAME}, more or less.",
         "Query: {NAME}",
         "Bring up {NAME}.",
         "My friend mentioned {NAME}.",
         "Looking up {NAME}",
         "{NAME}, if that's how it's written",
         "The title was {NAME} or close to it.",
         "Please find {NAME}.",
         "Catalog search: {NAME}",
         "Show results for {NAME}",
         "I'm after {NAME}.",
         "Locate the game {NAME}",
         "Was the name {NAME}?",
         "Check if {NAME} is available.",
         "Open the listing for {NAME}.",
     }},
    {Task::VC2I,
     {
         // train
         "{CONDITION}",
         "Find {CONDITION}.",
         "I'm looking for {CONDITION}.",
         "Any recommendations for {CONDITION}?",
         "Show me {CONDITION}.",
         "Searching for {CONDITION}",
         "Recommend {CONDITION}, please.",
         "I want {CONDITION}.",
         "Are there any {CONDITION}?",
         "List some {CONDITION}.",
         "In the mood for {CONDITION}.",
         "Help me find {CONDITION}.",
         "What about {CONDITION}?",
         "Browse the store for {CONDITION}.",
         "Suggestions for {CONDITION}?",
         "Looking to pick up {CONDITION}.",
         "Give me a few {CONDITION}.",
         "Hunting for {CONDITION} today.",
         "Surface {CONDITION} from the catalog.",
         "Got any {CONDITION}?",
         // test
         "Find me {CONDITION}.",
         "I'd love {CONDITION}.",
         "Recommendations for {CONDITION}, please.",
         "Show a selection of {CONDITION}.",
         "Do you carry {CONDITION}?",
         "Pick out {CONDITION} for me.",
         "What {CONDITION} do you have?",
         "Retrieve {CONDITION}.",
         "I could go for {CONDITION}.",
         "Queue up some {CONDITION}.",
         "Any good {CONDITION} around?",
         "Search results wanted: {CONDITION}",
         "Point me toward {CONDITION}.",
         "Fetch {CONDITION} from the store.",
         "Can you suggest {CONDITION}?",
         "Tonight calls for {CONDITION}.",
         "On the hunt for {CONDITION}.",
         "Filter the catalog to {CONDITION}.",
         "What matches {CONDITION}?",
         "Serve up {CONDITION}.",
     }},
    {Task::NA2I,
     {
         // train
         "I'd like to find some {CONDITION}.",
         "{CONDITION}",
         "Show me {CONDITION}.",
         "Looking for {CONDITION}",
         "Find {CONDITION} for me.",
         "Recommend {CONDITION}.",
         "I want {CONDITION}, nothing else.",
         "Are there {CONDITION} in the catalog?",
         "Please list {CONDITION}.",
         "Searching for {CONDITION}.",
         "Give me {CONDITION}.",
         "Any {CONDITION} available?",
         "Filter to {CONDITION}.",
         "Help me track down {CONDITION}.",
         "Suggest {CONDITION}, please.",
         "What do you have in the way of {CONDITION}?",
         "Pull together {CONDITION}.",
         "I'm strictly after {CONDITION}.",
         "Bring me {CONDITION}.",
         "In search of {CONDITION}.",
         // test
         "Find some {CONDITION}.",
         "I'm looking for {CONDITION}.",
         "Show listings for {CONDITION}.",
         "Got {CONDITION}?",
         "Retrieve {CONDITION} only.",
         "Recommendations: {CONDITION}",
         "What {CONDITION} can you offer?",
         "Surface {CONDITION}.",
         "I need {CONDITION}.",
         "Which titles are {CONDITION}?",
         "Queue some {CONDITION} for me.",
         "Strictly {CONDITION}, please.",
         "Hunt down {CONDITION}.",
         "Can I see {CONDITION}?",
         "Point out {CONDITION}.",
         "Narrow it to {CONDITION}.",
         "Fetch me {CONDITION}.",
         "Today I want {CONDITION}.",
         "Present {CONDITION} from the shelf.",
         "Select {CONDITION} for tonight.",
     }},
    {Task::UQ2I,
     {
         // train
         "Suggest some {CONDITION} for a user who likes {HISTORY}",
         "A player who enjoyed {HISTORY} wants {CONDITION}.",
         "I've played {HISTORY} and now I want {CONDITION}.",
         "Recommend {CONDITION} to someone with a history of {HISTORY}.",
         "Given past plays {HISTORY}, find {CONDITION}.",
         "For a fan of {HISTORY}, pick {CONDITION}.",
         "User history: {HISTORY}. Current wish: {CONDITION}.",
         "They liked {HISTORY}; now they ask for {CONDITION}.",
         "After {HISTORY}, I'm in the mood for {CONDITION}.",
         "Find {CONDITION} matching the taste behind {HISTORY}.",
         "Someone who played {HISTORY} is requesting {CONDITION}.",
         "Having enjoyed {HISTORY}, show me {CONDITION}.",
         "Profile: played {HISTORY}. Query: {CONDITION}.",
         "Pick {CONDITION} for a player coming off {HISTORY}.",
         "I loved {HISTORY}. Today, {CONDITION} please.",
         "With {HISTORY} in their library, they now want {CONDITION}.",
         "Serve {CONDITION} to the user who played {HISTORY}.",
         "Next up after {HISTORY}: {CONDITION}.",
         "His log shows {HISTORY}; he's hunting {CONDITION}.",
         "From {HISTORY} to {CONDITION}: what fits?",
         // test
         "Recommend {CONDITION} for someone who played {HISTORY}.",
         "A user with history {HISTORY} asks for {CONDITION}.",
         "I finished {HISTORY}; find me {CONDITION}.",
         "For a player fond of {HISTORY}, surface {CONDITION}.",
         "Given {HISTORY}, what {CONDITION} would suit?",
         "They binged {HISTORY} and now request {CONDITION}.",
         "Past: {HISTORY}. Wanted: {CONDITION}.",
         "Suggest {CONDITION} in line with {HISTORY}.",
         "After enjoying {HISTORY}, she wants {CONDITION}.",
         "Played {HISTORY}. Show {CONDITION} next.",
         "Pick out {CONDITION} for the fan of {HISTORY}.",
         "His library lists {HISTORY}; fetch {CONDITION}.",
         "Following {HISTORY}, retrieve {CONDITION}.",
         "Account history {HISTORY}, current craving {CONDITION}.",
         "Find {CONDITION} for a taste shaped by {HISTORY}.",
         "Queue {CONDITION} for someone coming from {HISTORY}.",
         "Loved {HISTORY}. Next want: {CONDITION}.",
         "Match {CONDITION} against the preferences in {HISTORY}.",
         "The user, after {HISTORY}, asks for {CONDITION}.",
         "Based on {HISTORY}, present {CONDITION}.",
     }},
};

}  // namespace

const TemplatePool& builtin_templates() {
  static const TemplatePool pool = [] {
    std::vector<Template> templates;
    templates.reserve(400);
    for (const auto& bank : kPatterns) {
      for (int i = 0; i < 40; ++i) {
        Template t;
        t.task = bank.task;
        t.split = i < 20 ? Split::train : Split::test;
        int index = i < 20 ? i : i - 20;
        char num[8];
        std::snprintf(num, sizeof(num), "%02d", index);
        t.id = std::string(task_name(bank.task)) + "-" +
               std::string(split_name(t.split)) + "-" + num;
        t.pattern = bank.patterns[i];
        templates.push_back(std::move(t));
      }
    }
    TemplatePool p(std::move(templates));
    p.require_complete();
    return p;
  }();
  return pool;
}

}  // namespace forge
