pub mod automata;
pub mod fps;
pub mod kernel;
pub mod linrep;
pub mod seq;
pub mod verify;
pub mod words;
