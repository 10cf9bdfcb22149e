#include "priv/synth/wordlists.hpp"

namespace priv::synth {

namespace {

const std::array<const char*, 200> kFirstNames = {{
    "Alice", "John", "James", "Mary", "Robert", "Patricia", "Michael", "Jennifer",
    "William", "Linda", "David", "Elizabeth", "Richard", "Barbara", "Joseph", "Susan",
    "Thomas", "Jessica", "Charles", "Sarah", "Christopher", "Karen", "Daniel", "Nancy",
    "Matthew", "Lisa", "Anthony", "Betty", "Mark", "Margaret", "Donald", "Sandra",
    "Steven", "Ashley", "Paul", "Kimberly", "Andrew", "Emily", "Joshua", "Donna",
    "Kenneth", "Michelle", "Kevin", "Carol", "Brian", "Amanda", "George", "Dorothy",
    "Edward", "Melissa", "Ronald", "Deborah", "Timothy", "Stephanie", "Jason", "Rebecca",
    "Jeffrey", "Sharon", "Ryan", "Laura", "Jacob", "Cynthia", "Gary", "Kathleen",
    "Nicholas", "Amy", "Eric", "Angela", "Jonathan", "Shirley", "Stephen", "Anna",
    "Larry", "Brenda", "Justin", "Pamela", "Scott", "Emma", "Brandon", "Nicole",
    "Benjamin", "Helen", "Samuel", "Samantha", "Gregory", "Katherine", "Frank", "Christine",
    "Alexander", "Debra", "Raymond", "Rachel", "Patrick", "Carolyn", "Jack", "Janet",
    "Dennis", "Catherine", "Jerry", "Maria", "Tyler", "Heather", "Aaron", "Diane",
    "Jose", "Ruth", "Adam", "Julie", "Nathan", "Olivia", "Henry", "Joyce",
    "Douglas", "Virginia", "Zachary", "Victoria", "Peter", "Kelly", "Kyle", "Lauren",
    "Ethan", "Christina", "Walter", "Joan", "Noah", "Evelyn", "Jeremy", "Judith",
    "Christian", "Megan", "Keith", "Andrea", "Roger", "Cheryl", "Terry", "Hannah",
    "Gerald", "Jacqueline", "Harold", "Martha", "Sean", "Gloria", "Austin", "Teresa",
    "Carl", "Ann", "Arthur", "Sara", "Lawrence", "Madison", "Dylan", "Frances",
    "Jesse", "Kathryn", "Jordan", "Janice", "Bryan", "Jean", "Billy", "Abigail",
    "Joe", "Alexis", "Bruce", "Grace", "Gabriel", "Denise", "Logan", "Amber",
    "Albert", "Doris", "Willie", "Marilyn", "Alan", "Danielle", "Juan", "Beverly",
    "Wayne", "Isabella", "Elijah", "Theresa", "Randy", "Diana", "Roy", "Natalie",
    "Vincent", "Brittany", "Ralph", "Charlotte", "Eugene", "Marie", "Russell", "Kayla",
    "Bobby", "Alexandra", "Mason", "Lori", "Philip", "Rose", "Louis", "Sophia",
}};

const std::array<const char*, 200> kLastNames = {{
    "Smith", "Johnson", "Williams", "Brown", "Jones", "Garcia", "Miller", "Davis",
    "Rodriguez", "Martinez", "Hernandez", "Lopez", "Gonzalez", "Wilson", "Anderson", "Thomas",
    "Taylor", "Moore", "Jackson", "Martin", "Lee", "Perez", "Thompson", "White",
    "Harris", "Sanchez", "Clark", "Ramirez", "Lewis", "Robinson", "Walker", "Young",
    "Allen", "King", "Wright", "Scott", "Torres", "Nguyen", "Hill", "Flores",
    "Green", "Adams", "Nelson", "Baker", "Hall", "Rivera", "Campbell", "Mitchell",
    "Carter", "Roberts", "Gomez", "Phillips", "Evans", "Turner", "Diaz", "Parker",
    "Cruz", "Edwards", "Collins", "Reyes", "Stewart", "Morris", "Morales", "Murphy",
    "Cook", "Rogers", "Gutierrez", "Ortiz", "Morgan", "Cooper", "Peterson", "Bailey",
    "Reed", "Kelly", "Howard", "Ramos", "Kim", "Cox", "Ward", "Richardson",
    "Watson", "Brooks", "Chavez", "Wood", "James", "Bennett", "Gray", "Mendoza",
    "Ruiz", "Hughes", "Price", "Alvarez", "Castillo", "Sanders", "Patel", "Myers",
    "Long", "Ross", "Foster", "Jimenez", "Powell", "Jenkins", "Perry", "Russell",
    "Sullivan", "Bell", "Coleman", "Butler", "Henderson", "Barnes", "Gonzales", "Fisher",
    "Vasquez", "Simmons", "Romero", "Jordan", "Patterson", "Alexander", "Hamilton", "Graham",
    "Reynolds", "Griffin", "Wallace", "Moreno", "West", "Cole", "Hayes", "Bryant",
    "Herrera", "Gibson", "Ellis", "Tran", "Medina", "Aguilar", "Stevens", "Murray",
    "Ford", "Castro", "Marshall", "Owens", "Harrison", "Fernandez", "McDonald", "Woods",
    "Washington", "Kennedy", "Wells", "Vargas", "Henry", "Chen", "Freeman", "Webb",
    "Tucker", "Guzman", "Burns", "Crawford", "Olson", "Simpson", "Porter", "Hunter",
    "Gordon", "Mendez", "Silva", "Shaw", "Snyder", "Mason", "Dixon", "Munoz",
    "Hunt", "Hicks", "Holmes", "Palmer", "Wagner", "Black", "Robertson", "Boyd",
    "Rose", "Stone", "Salazar", "Fox", "Warren", "Mills", "Meyer", "Rice",
    "Schmidt", "Garza", "Daniels", "Ferguson", "Nichols", "Stephens", "Soto", "Weaver",
    "Ryan", "Gardner", "Payne", "Grant", "Dunn", "Kelley", "Spencer", "Hawkins",
}};

}  // namespace

const std::array<const char*, 200>& first_names() { return kFirstNames; }
const std::array<const char*, 200>& last_names() { return kLastNames; }

}  // namespace priv::synth
