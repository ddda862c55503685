pub mod actions;
pub mod gaz;
pub mod simulate;
pub mod sweep;
pub mod verify;
