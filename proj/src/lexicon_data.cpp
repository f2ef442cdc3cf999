#include "lexicon_data.hpp"

namespace chatsumm::detail {

const std::set<std::string>& bundled_stop_words() {
    static const std::set<std::string> words = {
        "a", "about", "above", "across", "after", "afterwards", "again", "against",
        "all", "almost", "alone", "along", "already", "also", "although", "always",
        "am", "among", "amongst", "an", "and", "another", "any", "anyhow", "anyone",
        "anything", "anyway", "anywhere", "are", "around", "as", "at", "back", "be",
        "became", "because", "become", "becomes", "becoming", "been", "before",
        "beforehand", "behind", "being", "below", "beside", "besides", "between",
        "beyond", "both", "bottom", "but", "by", "call", "can", "cannot", "could",
        "did", "do", "does", "doing", "done", "down", "due", "during", "each",
        "either", "else", "elsewhere", "empty", "enough", "etc", "even", "ever",
        "every", "everyone", "everything", "everywhere", "except", "few", "for",
        "former", "formerly", "from", "front", "full", "further", "get", "give",
        "go", "got", "had", "has", "have", "having", "he", "hence", "her", "here",
        "hereafter", "hereby", "herein", "hereupon", "hers", "herself", "him",
        "himself", "his", "how", "however", "i", "if", "in", "indeed", "into", "is",
        "it", "its", "itself", "just", "keep", "last", "latter", "latterly",
        "least", "less", "let", "like", "made", "many", "may", "maybe", "me",
        "meanwhile", "might", "mine", "more", "moreover", "most", "mostly", "move",
        "much", "must", "my", "myself", "namely", "neither", "never",
        "nevertheless", "next", "no", "nobody", "none", "noone", "nor", "not",
        "nothing", "now", "nowhere", "of", "off", "often", "okay", "on", "once",
        "one", "only", "onto", "or", "other", "others", "otherwise", "our", "ours",
        "ourselves", "out", "over", "own", "part", "per", "perhaps", "please",
        "put", "quite", "rather", "re", "really", "regarding", "same", "say",
        "see", "seem", "seemed", "seeming", "seems", "serious", "several", "shall",
        "she", "should", "show", "side", "since", "so", "some", "somehow",
        "someone", "something", "sometime", "sometimes", "somewhere", "still",
        "such", "take", "than", "that", "the", "their", "theirs", "them",
        "themselves", "then", "thence", "there", "thereafter", "thereby",
        "therefore", "therein", "thereupon", "these", "they", "this", "those",
        "though", "through", "throughout", "thru", "thus", "to", "together", "too",
        "top", "toward", "towards", "under", "unless", "until", "up", "upon", "us",
        "used", "using", "various", "very", "via", "was", "we", "well", "were",
        "what", "whatever", "when", "whence", "whenever", "where", "whereafter",
        "whereas", "whereby", "wherein", "whereupon", "wherever", "whether",
        "which", "while", "whither", "who", "whoever", "whole", "whom", "whose",
        "why", "will", "with", "within", "without", "would", "yet", "you", "your",
        "yours", "yourself", "yourselves",
        // chat filler seen in transcripts
        "yeah", "yes", "no", "ok", "hmm", "umm", "uh", "oh", "hey", "hi", "hello",
        "thanks", "thank", "welcome", "sure", "right", "sorry", "bye", "goodbye",
        "gonna", "wanna", "gotta", "kind", "sort", "lot", "bit", "thing", "things",
        "stuff", "mean", "know", "think", "guess", "actually", "basically",
        "definitely", "probably", "apparently", "honestly", "literally",
    };
    return words;
}

const std::map<std::string, std::string>& bundled_contractions() {
    static const std::map<std::string, std::string> table = {
        {"ain't", "is not"}, {"aren't", "are not"}, {"can't", "can not"},
        {"can't've", "can not have"}, {"'cause", "because"}, {"could've", "could have"},
        {"couldn't", "could not"}, {"didn't", "did not"}, {"doesn't", "does not"},
        {"don't", "do not"}, {"hadn't", "had not"}, {"hasn't", "has not"},
        {"haven't", "have not"}, {"he'd", "he would"}, {"he'll", "he will"},
        {"he's", "he is"}, {"how'd", "how did"}, {"how'll", "how will"},
        {"how's", "how is"}, {"i'd", "i would"}, {"i'll", "i will"},
        {"i'm", "i am"}, {"i've", "i have"}, {"isn't", "is not"},
        {"it'd", "it would"}, {"it'll", "it will"}, {"it's", "it is"},
        {"let's", "let us"}, {"ma'am", "madam"}, {"mayn't", "may not"},
        {"might've", "might have"}, {"mightn't", "might not"}, {"must've", "must have"},
        {"mustn't", "must not"}, {"needn't", "need not"}, {"o'clock", "of the clock"},
        {"oughtn't", "ought not"}, {"shan't", "shall not"}, {"she'd", "she would"},
        {"she'll", "she will"}, {"she's", "she is"}, {"should've", "should have"},
        {"shouldn't", "should not"}, {"that'd", "that would"}, {"that's", "that is"},
        {"there'd", "there would"}, {"there's", "there is"}, {"they'd", "they would"},
        {"they'll", "they will"}, {"they're", "they are"}, {"they've", "they have"},
        {"wasn't", "was not"}, {"we'd", "we would"}, {"we'll", "we will"},
        {"we're", "we are"}, {"we've", "we have"}, {"weren't", "were not"},
        {"what'll", "what will"}, {"what're", "what are"}, {"what's", "what is"},
        {"what've", "what have"}, {"when's", "when is"}, {"where'd", "where did"},
        {"where's", "where is"}, {"where've", "where have"}, {"who'll", "who will"},
        {"who's", "who is"}, {"who've", "who have"}, {"why's", "why is"},
        {"won't", "will not"}, {"won't've", "will not have"}, {"would've", "would have"},
        {"wouldn't", "would not"}, {"y'all", "you all"}, {"you'd", "you would"},
        {"you'll", "you will"}, {"you're", "you are"}, {"you've", "you have"},
        {"cant", "can not"}, {"dont", "do not"}, {"didnt", "did not"},
        {"doesnt", "does not"}, {"wont", "will not"}, {"isnt", "is not"},
        {"wasnt", "was not"}, {"havent", "have not"}, {"hasnt", "has not"},
        {"couldnt", "could not"}, {"shouldnt", "should not"}, {"wouldnt", "would not"},
        {"im", "i am"}, {"ive", "i have"}, {"youre", "you are"}, {"theyre", "they are"},
        {"thats", "that is"}, {"whats", "what is"}, {"theres", "there is"},
        {"lets", "let us"}, {"gonna", "going to"}, {"wanna", "want to"},
        {"gotta", "got to"}, {"kinda", "kind of"}, {"sorta", "sort of"},
        {"gimme", "give me"}, {"lemme", "let me"}, {"dunno", "do not know"},
        {"shoulda", "should have"}, {"coulda", "could have"}, {"woulda", "would have"},
        {"howdy", "how do you do"}, {"til", "until"}, {"'til", "until"},
        {"tis", "it is"}, {"twas", "it was"}, {"ol'", "old"},
        {"e'er", "ever"}, {"ne'er", "never"}, {"o'er", "over"},
        {"daren't", "dare not"}, {"it'd've", "it would have"},
        {"she'd've", "she would have"}, {"he'd've", "he would have"},
        {"we'd've", "we would have"}, {"they'd've", "they would have"},
        {"you'd've", "you would have"}, {"i'd've", "i would have"},
        {"who'd", "who would"}, {"that'll", "that will"}, {"this'll", "this will"},
    };
    return table;
}

const std::map<std::string, std::string>& lemma_exceptions() {
    static const std::map<std::string, std::string> table = {
        {"children", "child"}, {"people", "person"}, {"women", "woman"},
        {"geese", "goose"}, {"teeth", "tooth"}, {"feet", "foot"},
        {"mice", "mouse"}, {"indices", "index"}, {"matrices", "matrix"},
        {"appendices", "appendix"}, {"analyses", "analysis"}, {"statuses", "status"},
        {"viruses", "virus"}, {"bonuses", "bonus"}, {"buses", "bus"},
        {"outages", "outage"}, {"charges", "charge"}, {"charged", "charge"},
        {"charging", "charge"}, {"upgrades", "upgrade"}, {"upgraded", "upgrade"},
        {"upgrading", "upgrade"}, {"services", "service"}, {"serviced", "service"},
        {"servicing", "service"}, {"messages", "message"}, {"messaged", "message"},
        {"messaging", "message"}, {"devices", "device"}, {"invoices", "invoice"},
        {"invoiced", "invoice"}, {"invoicing", "invoice"}, {"issues", "issue"},
        {"issued", "issue"}, {"issuing", "issue"}, {"updates", "update"},
        {"updated", "update"}, {"updating", "update"}, {"changes", "change"},
        {"changed", "change"}, {"changing", "change"}, {"notices", "notice"},
        {"noticed", "notice"}, {"noticing", "notice"}, {"schedules", "schedule"},
        {"scheduled", "schedule"}, {"scheduling", "schedule"}, {"balances", "balance"},
        {"balanced", "balance"}, {"balancing", "balance"}, {"reduces", "reduce"},
        {"reduced", "reduce"}, {"reducing", "reduce"}, {"resolves", "resolve"},
        {"resolved", "resolve"}, {"resolving", "resolve"},
    };
    return table;
}

const std::set<std::string>& non_content_lemmas() {
    static const std::set<std::string> table = {
        // adverbs and discourse fillers that survive the stop list
        "absolutely", "accordingly", "additionally", "admittedly",
        "allegedly", "alternatively", "anyways", "approximately", "arguably",
        "certainly", "clearly", "completely", "consequently", "currently",
        "directly", "eventually", "exactly", "extremely", "finally", "firstly",
        "fortunately", "frankly", "frequently", "generally", "gladly", "greatly",
        "hardly", "hopefully", "immediately", "importantly", "incredibly",
        "initially", "instead", "interestingly", "ironically", "lately",
        "luckily", "mainly", "meantime", "merely", "naturally", "nearly",
        "normally", "notably", "obviously", "occasionally", "originally",
        "overall", "particularly", "partly", "personally", "possibly",
        "presently", "presumably", "previously", "primarily", "promptly",
        "quickly", "rarely", "recently", "regularly", "relatively", "roughly",
        "sadly", "secondly", "seemingly", "seriously", "shortly", "similarly",
        "simply", "slightly", "slowly", "specifically", "strangely", "strictly",
        "strongly", "subsequently", "suddenly", "supposedly", "surely",
        "surprisingly", "technically", "temporarily", "thankfully",
        "theoretically", "thirdly", "thoroughly", "totally", "truly",
        "typically", "ultimately", "unfortunately", "usually", "virtually",
        "whereas", "whereby",
    };
    return table;
}

}  // namespace chatsumm::detail
